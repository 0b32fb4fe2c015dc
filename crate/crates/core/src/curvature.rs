//! Curvature tensors of left-invariant connections and the four
//! statistical-structure detectors.
//!
//! Sign convention: `R_ijkl = ⟨R(e_i, e_j) e_k, e_l⟩` with
//! `R(X, Y) = ∇_X ∇_Y − ∇_Y ∇_X − ∇_[X,Y]`. For the hyperbolic algebra
//! `R_1212 = 1` and the sectional curvature `R_1221` is `−1`.

use std::collections::BTreeMap;

use crate::algebra::{jacobi_defect, LieAlgebra};
use crate::connection::{
    difference_tensor, dual_connection, levi_civita, nabla_cubic, nabla_k, statistical_connection, torsion_defect,
    ConnectionCoeffs, DifferenceTensor,
};
use crate::error::{Error, Result};
use crate::scalar::{Context, Scalar};
use crate::symtensor::{total_symmetry_defect, CubicForm, FourTensor, SymmetryClass};

/// Tolerance multiplier for the constant-curvature and CHC verification in
/// floating mode.
pub const VERIFY_FACTOR: f64 = 8.0;

/// `R_ijkl = Σ_u (Γ_jk^u Γ_iu^l − Γ_ik^u Γ_ju^l − a_ij^u Γ_uk^l)`.
///
/// The result is tagged [`SymmetryClass::Curvature`] when those symmetries
/// hold (within `ctx.eps` in floating mode), otherwise `General`.
pub fn curvature<S: Scalar>(gamma: &ConnectionCoeffs<S>, spec: &LieAlgebra<S>, ctx: &Context) -> FourTensor<S> {
    let n = gamma.dim();
    let a = spec.dense();
    let r = FourTensor::from_fn(n, SymmetryClass::General, |i, j, k, l| {
        let mut s = S::zero();
        for u in 0..n {
            let g1 = gamma.get(j, k, u);
            if !g1.is_zero() {
                s += g1.clone() * gamma.get(i, u, l).clone();
            }
            let g2 = gamma.get(i, k, u);
            if !g2.is_zero() {
                s -= g2.clone() * gamma.get(j, u, l).clone();
            }
            let c = &a[(i * n + j) * n + u];
            if !c.is_zero() {
                s -= c.clone() * gamma.get(u, k, l).clone();
            }
        }
        s
    });
    if r.has_curvature_symmetries(ctx.eps) {
        r.with_class(SymmetryClass::Curvature)
    } else {
        r
    }
}

/// `[K,K]_ijkl = ((K_j K_i − K_i K_j))_kl = ⟨[K_{e_i}, K_{e_j}] e_k, e_l⟩`.
pub fn kk_bracket<S: Scalar>(k: &DifferenceTensor<S>) -> FourTensor<S> {
    let n = k.dim();
    let prods: Vec<Vec<_>> = (0..n)
        .map(|a| (0..n).map(|b| k.matrix(a).mul(k.matrix(b))).collect())
        .collect();
    FourTensor::from_fn(n, SymmetryClass::Curvature, |i, j, kk, l| {
        prods[j][i][(kk, l)].clone() - prods[i][j][(kk, l)].clone()
    })
}

/// `R⁰ + [K, K]`, the curvature of a conjugate-symmetric structure.
pub fn cs_curvature<S: Scalar>(r0: &FourTensor<S>, k: &DifferenceTensor<S>) -> FourTensor<S> {
    r0.add(&kk_bracket(k))
}

/// `R(v, w, w, v) / (|v|²|w|² − ⟨v, w⟩²)` in the orthonormal frame.
pub fn sectional<S: Scalar>(r: &FourTensor<S>, v: &[S], w: &[S], ctx: &Context) -> Result<S> {
    let n = r.dim();
    for x in [v, w] {
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: x.len(),
            });
        }
    }
    let dot = |x: &[S], y: &[S]| {
        x.iter()
            .zip(y)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    };
    let den = dot(v, v) * dot(w, w) - dot(v, w) * dot(v, w);
    if den.is_negligible(ctx.eps) {
        return Err(Error::DependentVectors(den.to_f64()));
    }
    let mut num = S::zero();
    for i in 0..n {
        for j in 0..n {
            let vw = v[i].clone() * w[j].clone();
            if vw.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let f = w[k].clone() * v[l].clone();
                    if !f.is_zero() {
                        num += vw.clone() * f * r.get(i, j, k, l).clone();
                    }
                }
            }
        }
    }
    Ok(num / den)
}

/// `∇^g C` is totally symmetric.
pub fn is_conjugate_symmetric<S: Scalar>(spec: &LieAlgebra<S>, c: &CubicForm<S>, ctx: &Context) -> Result<bool> {
    let t = nabla_cubic(&levi_civita(spec)?, c);
    Ok(total_symmetry_defect(&t)?.is_negligible(ctx.eps))
}

pub fn is_flat<S: Scalar>(r: &FourTensor<S>, ctx: &Context) -> bool {
    r.is_zero_within(ctx.eps)
}

fn verify_tol(ctx: &Context) -> f64 {
    ctx.eps * VERIFY_FACTOR
}

fn max_abs<S: Scalar>(values: impl Iterator<Item = S>) -> S {
    values
        .map(|v| v.abs())
        .fold(S::zero(), |a, b| if b > a { b } else { a })
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

fn constant_model<S: Scalar>(k: &S, i: usize, j: usize, kk: usize, l: usize) -> S {
    k.clone() * S::from_int(delta(j, kk) * delta(i, l) - delta(i, kk) * delta(j, l))
}

fn chc_model<S: Scalar>(c: &S, t: usize, i: usize, j: usize, l: usize) -> S {
    -(c.clone() * S::from_ratio(delta(t, i) * delta(j, l) + delta(t, j) * delta(i, l), 2))
}

fn model_residual<S: Scalar>(t: &FourTensor<S>, model: impl Fn(usize, usize, usize, usize) -> S) -> S {
    let n = t.dim();
    let mut worst = S::zero();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = (t.get(a, b, c, d).clone() - model(a, b, c, d)).abs();
                    if v > worst {
                        worst = v;
                    }
                }
            }
        }
    }
    worst
}

/// `k` with `R(X,Y)Z = k(⟨Y,Z⟩X − ⟨X,Z⟩Y)`, i.e.
/// `R_ijkl = k(δ_jk δ_il − δ_ik δ_jl)`. The candidate is read from
/// `R_1212 = −k`; in one dimension the curvature vanishes and `k = 0`.
pub fn constant_curvature<S: Scalar>(r: &FourTensor<S>, ctx: &Context) -> Option<S> {
    let k = if r.dim() < 2 {
        S::zero()
    } else {
        -r.get(0, 1, 0, 1).clone()
    };
    constant_curvature_residual(r, &k)
        .is_negligible(verify_tol(ctx))
        .then_some(k)
}

/// `max |R_ijkl − k(δ_jk δ_il − δ_ik δ_jl)|`.
pub fn constant_curvature_residual<S: Scalar>(r: &FourTensor<S>, k: &S) -> S {
    model_residual(r, |i, j, kk, l| constant_model(k, i, j, kk, l))
}

/// `c` with `(∇_X K)(Y, Z) = −(c/2)(⟨X,Y⟩Z + ⟨X,Z⟩Y)` for the array
/// produced by [`nabla_k`]; the candidate is `−(∇_1 K)_11^1`.
pub fn chc_constant<S: Scalar>(dk: &FourTensor<S>, ctx: &Context) -> Option<S> {
    if dk.dim() == 0 {
        return None;
    }
    let c = -dk.get(0, 0, 0, 0).clone();
    chc_residual(dk, &c).is_negligible(verify_tol(ctx)).then_some(c)
}

/// `max |(∇_t K)_ij^l + (c/2)(δ_ti δ_jl + δ_tj δ_il)|`.
pub fn chc_residual<S: Scalar>(dk: &FourTensor<S>, c: &S) -> S {
    model_residual(dk, |t, i, j, l| chc_model(c, t, i, j, l))
}

/// Classification of one statistical structure `(g, C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport<S> {
    pub conjugate_symmetric: bool,
    pub dually_flat: bool,
    pub constant_curvature: Option<S>,
    pub chc: Option<S>,
    pub curvature_tensor: FourTensor<S>,
    /// Residuals behind each decision.
    pub defects: BTreeMap<&'static str, S>,
}

/// Run every detector on `(spec, C)`. The curvature is always the direct
/// formula for the statistical connection.
pub fn analyze<S: Scalar>(spec: &LieAlgebra<S>, c: &CubicForm<S>, ctx: &Context) -> Result<StructureReport<S>> {
    if c.dim() != spec.dim() {
        return Err(Error::LengthMismatch {
            expected: spec.dim(),
            got: c.dim(),
        });
    }
    let lc = levi_civita(spec)?;
    let k = difference_tensor(c);
    let st = statistical_connection(&lc, &k);
    let du = dual_connection(&lc, &k);
    let r = curvature(&st, spec, ctx);
    let r_dual = curvature(&du, spec, ctx);

    let cs_defect = total_symmetry_defect(&nabla_cubic(&lc, c))?;
    let conjugate_symmetric = cs_defect.is_negligible(ctx.eps);
    let dually_flat = is_flat(&r, ctx);
    let constant_curvature = constant_curvature(&r, ctx);
    let dk = nabla_k(&st, &k);
    // CHC is only defined for Hessian (dually flat) structures.
    let chc = if dually_flat { chc_constant(&dk, ctx) } else { None };

    let curvature_gap = max_abs(r.data().iter().zip(r_dual.data()).map(|(x, y)| x.clone() - y.clone()));

    let mut defects = BTreeMap::new();
    defects.insert("jacobi", jacobi_defect(spec));
    defects.insert("torsion", torsion_defect(&st, spec));
    defects.insert("conjugate_symmetry", cs_defect);
    defects.insert("dual_curvature_gap", curvature_gap);
    defects.insert("curvature_max", max_abs(r.data().iter().cloned()));
    if let Some(k) = &constant_curvature {
        defects.insert("constant_curvature", constant_curvature_residual(&r, k));
    }
    if let Some(cval) = &chc {
        defects.insert("chc", chc_residual(&dk, cval));
    }

    Ok(StructureReport {
        conjugate_symmetric,
        dually_flat,
        constant_curvature,
        chc,
        curvature_tensor: r,
        defects,
    })
}
