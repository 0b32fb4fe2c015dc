//! The isotropic Gaussian family `N(μ, Σ·I_m)` with its Fisher metric and
//! Amari–Chentsov tensor, and its identification with the hyperbolic
//! algebra `rhn(m+1)`.
//!
//! Coordinates are ordered `(Σ, μ_1, …, μ_m)`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::algebra::{build_builtin, Family, LieAlgebra};
use crate::curvature::{analyze, StructureReport};
use crate::error::{Error, Result};
use crate::scalar::Context;
use crate::symtensor::CubicForm;

/// Largest tensor grid the quadrature oracle will evaluate.
const MAX_GRID_POINTS: usize = 1 << 22;

/// A point `(Σ, μ)` of the family.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPoint {
    sigma: f64,
    mu: Vec<f64>,
}

impl GaussianPoint {
    pub fn new(sigma: f64, mu: Vec<f64>) -> Result<Self> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::NonPositiveVariance(sigma));
        }
        Ok(Self { sigma, mu })
    }

    /// `(Σ, 0)` in dimension `m`.
    pub fn centered(m: usize, sigma: f64) -> Result<Self> {
        Self::new(sigma, vec![0.0; m])
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }
}

/// Symmetric tensor of degree 2 or 3 in the coordinate frame
/// `(∂_Σ, ∂_{μ_1}, …, ∂_{μ_m})`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordTensor {
    degree: usize,
    dim: usize,
    data: Vec<f64>,
}

impl CoordTensor {
    fn zeros(degree: usize, dim: usize) -> Self {
        Self {
            degree,
            dim,
            data: vec![0.0; dim.pow(degree as u32)],
        }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.degree, "wrong number of indices");
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `m + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs_diff(&self, other: &CoordTensor) -> f64 {
        assert_eq!((self.degree, self.dim), (other.degree, other.dim));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Full contraction with one vector per slot.
    pub fn eval(&self, vectors: &[&[f64]]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        let mut total = 0.0;
        for (flat, v) in self.data.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            let mut rest = flat;
            let mut w = *v;
            for slot in (0..self.degree).rev() {
                w *= vectors[slot][rest % self.dim];
                rest /= self.dim;
            }
            total += w;
        }
        total
    }
}

/// Closed-form Fisher metric: `g_ΣΣ = m/(2Σ²)`, `g_{μ_iμ_j} = δ_ij/Σ`.
pub fn fisher_closed(p: &GaussianPoint) -> CoordTensor {
    let m = p.m();
    let s = p.sigma;
    let mut g = CoordTensor::zeros(2, m + 1);
    g.set(&[0, 0], m as f64 / (2.0 * s * s));
    for i in 1..=m {
        g.set(&[i, i], 1.0 / s);
    }
    g
}

/// Closed-form Amari–Chentsov tensor: `T_ΣΣΣ = αm/Σ³`,
/// `T_{Σμ_iμ_j} = αδ_ij/Σ²` (and permutations).
pub fn ac_closed(alpha: f64, p: &GaussianPoint) -> CoordTensor {
    let m = p.m();
    let s = p.sigma;
    let mut t = CoordTensor::zeros(3, m + 1);
    t.set(&[0, 0, 0], alpha * m as f64 / s.powi(3));
    for i in 1..=m {
        let v = alpha / (s * s);
        t.set(&[0, i, i], v);
        t.set(&[i, 0, i], v);
        t.set(&[i, i, 0], v);
    }
    t
}

/// Nodes and weights of the probabilists' Gauss–Hermite rule (weight
/// `e^{−z²/2}/√(2π)`, weights summing to one) by Golub–Welsch.
pub fn gauss_hermite(order: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(order, order, |i, j| {
        if i.abs_diff(j) == 1 {
            (i.max(j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

fn check_order(m: usize, order: usize) -> Result<()> {
    if order < 8 {
        return Err(Error::Validation(format!(
            "quadrature order must be at least 8, got {order}"
        )));
    }
    match order.checked_pow(m as u32) {
        Some(points) if points <= MAX_GRID_POINTS => Ok(()),
        _ => Err(Error::Unsupported(format!(
            "a tensor grid of order {order} in {m} dimensions is too large"
        ))),
    }
}

#[cfg(test)]
fn log_density(p: &GaussianPoint, x: &[f64]) -> f64 {
    let m = p.m() as f64;
    let r2: f64 = x.iter().zip(&p.mu).map(|(a, b)| (a - b).powi(2)).sum();
    -0.5 * m * (2.0 * std::f64::consts::PI * p.sigma).ln() - r2 / (2.0 * p.sigma)
}

// ∂ log N(x | θ) with respect to each coordinate.
fn score(p: &GaussianPoint, x: &[f64]) -> Vec<f64> {
    let m = p.m();
    let s = p.sigma;
    let r2: f64 = x.iter().zip(&p.mu).map(|(a, b)| (a - b).powi(2)).sum();
    let mut out = Vec::with_capacity(m + 1);
    out.push(-(m as f64) / (2.0 * s) + r2 / (2.0 * s * s));
    out.extend(x.iter().zip(&p.mu).map(|(a, b)| (a - b) / s));
    out
}

// E_θ[f(score)] over the tensor grid, x = μ + √Σ z.
fn expect(p: &GaussianPoint, order: usize, mut f: impl FnMut(&[f64], f64)) {
    let m = p.m();
    let (nodes, weights) = gauss_hermite(order);
    let root = p.sigma.sqrt();
    let mut idx = vec![0usize; m];
    let mut x = vec![0.0; m];
    loop {
        let mut w = 1.0;
        for a in 0..m {
            x[a] = p.mu[a] + root * nodes[idx[a]];
            w *= weights[idx[a]];
        }
        f(&score(p, &x), w);
        let mut a = 0;
        while a < m {
            idx[a] += 1;
            if idx[a] < order {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
        if a == m {
            return;
        }
    }
}

/// Fisher metric `E[∂_a ℓ ∂_b ℓ]` by tensorized Gauss–Hermite quadrature.
pub fn fisher_quadrature(p: &GaussianPoint, order: usize) -> Result<CoordTensor> {
    check_order(p.m(), order)?;
    let d = p.m() + 1;
    let mut g = CoordTensor::zeros(2, d);
    expect(p, order, |s, w| {
        for a in 0..d {
            for b in 0..d {
                g.data[a * d + b] += w * s[a] * s[b];
            }
        }
    });
    Ok(g)
}

/// Amari–Chentsov tensor `α E[∂_a ℓ ∂_b ℓ ∂_c ℓ]` by quadrature.
pub fn ac_quadrature(alpha: f64, p: &GaussianPoint, order: usize) -> Result<CoordTensor> {
    check_order(p.m(), order)?;
    let d = p.m() + 1;
    let mut t = CoordTensor::zeros(3, d);
    expect(p, order, |s, w| {
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    t.data[(a * d + b) * d + c] += alpha * w * s[a] * s[b] * s[c];
                }
            }
        }
    });
    Ok(t)
}

/// The frame `X₀ = 2Σ∂_Σ`, `X_i = √Σ ∂_{μ_i}` evaluated at a point.
#[derive(Clone, Debug)]
pub struct LeftInvariantFrame {
    /// Coordinate components of `X₀, X₁, …, X_m`.
    pub vectors: Vec<Vec<f64>>,
    /// Fisher inner products `g(X_a, X_b)`.
    pub gram: Vec<Vec<f64>>,
    /// `max ‖[X₀, X_i] − X_i‖` by central differences.
    pub bracket_defect: f64,
}

fn frame_field(m: usize, a: usize, sigma: f64) -> Vec<f64> {
    let mut v = vec![0.0; m + 1];
    if a == 0 {
        v[0] = 2.0 * sigma;
    } else {
        v[a] = sigma.sqrt();
    }
    v
}

// Frame components depend only on Σ, so ∂_μ terms vanish.
fn lie_bracket(m: usize, a: usize, b: usize, sigma: f64) -> Vec<f64> {
    let h = 1e-5 * sigma;
    let xa = frame_field(m, a, sigma);
    let xb = frame_field(m, b, sigma);
    let d = |field: usize| -> Vec<f64> {
        let plus = frame_field(m, field, sigma + h);
        let minus = frame_field(m, field, sigma - h);
        plus.iter().zip(&minus).map(|(p, q)| (p - q) / (2.0 * h)).collect()
    };
    let (db, da) = (d(b), d(a));
    (0..=m).map(|c| xa[0] * db[c] - xb[0] * da[c]).collect()
}

pub fn left_invariant_frame(p: &GaussianPoint) -> LeftInvariantFrame {
    let m = p.m();
    let vectors: Vec<Vec<f64>> = (0..=m).map(|a| frame_field(m, a, p.sigma)).collect();
    let g = fisher_closed(p);
    let gram = vectors
        .iter()
        .map(|x| vectors.iter().map(|y| g.eval(&[x, y])).collect())
        .collect();
    let mut bracket_defect = 0.0f64;
    for i in 1..=m {
        let br = lie_bracket(m, 0, i, p.sigma);
        for (u, v) in br.iter().zip(&vectors[i]) {
            bracket_defect = bracket_defect.max((u - v).abs());
        }
    }
    LeftInvariantFrame {
        vectors,
        gram,
        bracket_defect,
    }
}

// Components of the α-tensor in the frame `X_a · scale_a`, divided by
// `metric_scale` (the cubic form of the metric g^F/metric_scale).
fn frame_cubic(alpha: f64, p: &GaussianPoint, scale: &[f64], metric_scale: f64) -> CubicForm<f64> {
    let m = p.m();
    let t = ac_closed(alpha, p);
    let frame = left_invariant_frame(p);
    let e: Vec<Vec<f64>> = (0..=m)
        .map(|a| frame.vectors[a].iter().map(|v| v * scale[a]).collect())
        .collect();
    let mut c = CubicForm::zero(m + 1);
    for i in 0..=m {
        for j in i..=m {
            for k in j..=m {
                c.set(i, j, k, t.eval(&[&e[i], &e[j], &e[k]]) / metric_scale);
            }
        }
    }
    c
}

/// The Takano structure as left-invariant data on `rhn(m+1)`.
///
/// The frame `e₁ = X₀`, `e_i = √(2m) X_i` is orthonormal for `g^F/(2m)` and
/// satisfies `[e₁, e_i] = e_i`; in it the α-connection has cubic form `C^α`
/// (`4α x₁³ + 6α Σ x₁x_i²`).
pub fn takano_left_invariant_data(m: usize, alpha: f64) -> Result<(LieAlgebra<f64>, CubicForm<f64>)> {
    if m == 0 {
        return Err(Error::Validation("m must be at least 1".into()));
    }
    let spec = build_builtin::<f64>(Family::Rhn, m + 1)?;
    let p = GaussianPoint::centered(m, 1.0)?;
    let r = (2.0 * m as f64).sqrt();
    let scale: Vec<f64> = (0..=m).map(|a| if a == 0 { 1.0 } else { r }).collect();
    Ok((spec, frame_cubic(alpha, &p, &scale, 2.0 * m as f64)))
}

/// Analyze the Takano structure in the `g^F`-orthonormal frame
/// `X₀/√(2m), X_i`, whose only brackets are `[e₁, e_i] = e_i/√(2m)`.
///
/// The expected outcome is conjugate symmetric, constant curvature
/// `(α² − 1)/(2m)`, dually flat iff `α = ±1`.
pub fn verify_takano(m: usize, alpha: f64, ctx: &Context) -> Result<StructureReport<f64>> {
    if m == 0 {
        return Err(Error::Validation("m must be at least 1".into()));
    }
    let r = (2.0 * m as f64).sqrt();
    let spec = LieAlgebra::from_upper_entries(m + 1, (1..=m).map(|i| ((0, i, i), 1.0 / r)), true)?;
    let p = GaussianPoint::centered(m, 1.0)?;
    let scale: Vec<f64> = (0..=m).map(|a| if a == 0 { 1.0 / r } else { 1.0 }).collect();
    let c = frame_cubic(alpha, &p, &scale, 1.0);
    analyze(&spec, &c, ctx)
}
