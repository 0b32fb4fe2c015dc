//! Normal form of dually flat cubic forms on the abelian algebra.
//!
//! A cubic form on ℝⁿ is dually flat exactly when its difference matrices
//! `K_u` commute. A joint orthonormal eigenbasis then diagonalizes the form
//! to `Σ λ_i x_i³`, and the signed-permutation group reduces `λ` to the
//! canonical representative `λ_1 ≥ … ≥ λ_n ≥ 0`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::connection::{difference_tensor, DifferenceTensor};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{rationalize, Context, Rational, Scalar};
use crate::symtensor::CubicForm;

/// Eigenvalue clustering threshold for the floating joint diagonalization.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Coefficients `λ` of a diagonal cubic form `Σ λ_i x_i³`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSpectrum<S>(pub Vec<S>);

impl<S: Scalar> DiagonalSpectrum<S> {
    pub fn values(&self) -> &[S] {
        &self.0
    }

    /// `λ_1 ≥ … ≥ λ_n ≥ 0`.
    pub fn is_canonical(&self) -> bool {
        self.0.iter().all(|v| *v >= S::zero()) && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|v| v.render()).collect::<Vec<_>>().join(",")
    }
}

/// Representative of the signed-permutation orbit of `λ` in the fundamental
/// domain: absolute values sorted in descending order.
pub fn canonicalize_v<S: Scalar>(lambda: &[S]) -> DiagonalSpectrum<S> {
    let mut v: Vec<S> = lambda.iter().map(|x| x.abs()).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    DiagonalSpectrum(v)
}

fn commute<S: Scalar>(k: &DifferenceTensor<S>, eps: f64) -> bool {
    let n = k.dim();
    for u in 0..n {
        for v in u + 1..n {
            let a = k.matrix(u).mul(k.matrix(v));
            let b = k.matrix(v).mul(k.matrix(u));
            if !(0..n).all(|i| (0..n).all(|j| a[(i, j)].approx_eq(&b[(i, j)], eps))) {
                return false;
            }
        }
    }
    true
}

/// Canonical diagonal form of a dually flat cubic form on ℝⁿ, or `None` when
/// the difference matrices do not commute (the form is not dually flat).
///
/// Exact mode returns exact coefficients; it fails with
/// [`Error::ExactModeRequired`] when a coefficient is irrational, in which
/// case the floating computation should be used.
pub fn abelian_df_normal_form<S: Scalar>(c: &CubicForm<S>, ctx: &Context) -> Result<Option<DiagonalSpectrum<S>>> {
    let k = difference_tensor(c);
    if !commute(&k, if S::EXACT { 0.0 } else { ctx.eps }) {
        return Ok(None);
    }
    if S::EXACT {
        exact_spectrum(&k).map(Some)
    } else {
        let kf: Vec<DMatrix<f64>> = k.matrices().iter().map(to_dmatrix).collect();
        let lambda = float_spectrum(&kf);
        Ok(Some(canonicalize_v(
            &lambda
                .into_iter()
                .map(|x| S::from_rational(&float_to_rational(x)))
                .collect::<Vec<_>>(),
        )))
    }
}

fn float_to_rational(x: f64) -> Rational {
    x.to_rational().unwrap_or_default()
}

fn to_dmatrix<S: Scalar>(m: &Mat<S>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64())
}

/// Unit joint eigenvectors of commuting symmetric matrices restricted to the
/// column span of `basis` (orthonormal columns).
fn joint_eigenbasis(mats: &[DMatrix<f64>], basis: DMatrix<f64>) -> Vec<DMatrix<f64>> {
    for m in mats {
        let restricted = basis.transpose() * m * &basis;
        let restricted = (&restricted + restricted.transpose()) * 0.5;
        let eig = SymmetricEigen::new(restricted);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let spread = eig.eigenvalues[order[order.len() - 1]] - eig.eigenvalues[order[0]];
        if spread <= CLUSTER_TOL {
            continue;
        }
        let mut out = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let mut end = start + 1;
            while end < order.len() && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= CLUSTER_TOL {
                end += 1;
            }
            let cols: Vec<_> = order[start..end]
                .iter()
                .map(|&i| eig.eigenvectors.column(i).into_owned())
                .collect();
            let sub = &basis * DMatrix::from_columns(&cols);
            out.extend(joint_eigenbasis(mats, sub));
            start = end;
        }
        return out;
    }
    basis
        .column_iter()
        .map(|c| DMatrix::from_column_slice(c.len(), 1, c.as_slice()))
        .collect()
}

// λ_i = −2 c_i with K(v, v) = c_i v for the unit joint eigenvector v.
fn float_spectrum(mats: &[DMatrix<f64>]) -> Vec<f64> {
    let n = mats.len();
    if n == 0 {
        return Vec::new();
    }
    let vecs = joint_eigenbasis(mats, DMatrix::identity(n, n));
    vecs.iter()
        .map(|v| {
            let kv: DMatrix<f64> = mats
                .iter()
                .enumerate()
                .fold(DMatrix::zeros(n, n), |acc, (u, m)| acc + m * v[u]);
            let w = kv.transpose() * v;
            -2.0 * (v.transpose() * w)[(0, 0)]
        })
        .collect()
}

// With K_u = −½ Σ_i λ_i (v_i)_u v_i v_iᵀ the Gram matrix tr(K_u K_v) equals
// ¼ V diag(λ²) Vᵀ, so its eigenvalues are λ_i²/4 whatever the frame. They are
// located in f64, rationalized and confirmed by an exact rank count.
fn exact_spectrum<S: Scalar>(k: &DifferenceTensor<S>) -> Result<DiagonalSpectrum<S>> {
    let n = k.dim();
    let irrational = || Error::ExactModeRequired("the diagonal coefficients are irrational");
    let gram = Mat::from_fn(n, n, |u, v| {
        let p = k.matrix(u).mul(k.matrix(v));
        (0..n).fold(S::zero(), |acc, i| acc + p[(i, i)].clone())
    });
    let eig = SymmetricEigen::new(to_dmatrix(&gram)).eigenvalues;
    let mut candidates: Vec<Rational> = Vec::new();
    for &x in eig.iter() {
        let q = rationalize(x, 1_000_000).ok_or_else(irrational)?;
        if !candidates.contains(&q) {
            candidates.push(q);
        }
    }
    let mut lambda: Vec<S> = Vec::with_capacity(n);
    for mu in candidates {
        let mu_s = S::from_rational(&mu);
        let multiplicity = n - gram.sub(&Mat::identity(n).scale(&mu_s)).rank(0.0);
        if multiplicity == 0 {
            return Err(irrational());
        }
        let value = (S::from_int(4) * mu_s).sqrt().ok_or_else(irrational)?;
        lambda.extend(std::iter::repeat_n(value, multiplicity));
    }
    if lambda.len() != n {
        return Err(irrational());
    }
    Ok(canonicalize_v(&lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::scalar::rational;
    use crate::symtensor::{act_isotropy, OrthogonalMap};

    type Q = Rational;

    fn diag(lambda: &[Q]) -> CubicForm<Q> {
        let mut c = CubicForm::zero(lambda.len());
        for (i, l) in lambda.iter().enumerate() {
            c.set(i, i, i, l.clone());
        }
        c
    }

    #[test]
    fn canonical_representative() {
        let v = canonicalize_v(&[rational(-3, 1), rational(1, 1), rational(2, 1)]);
        assert_eq!(v.render(), "3,2,1");
        assert!(v.is_canonical());
        assert_eq!(canonicalize_v(&v.0), v);
        assert_eq!(canonicalize_v::<Q>(&[rational(0, 1), rational(0, 1)]).render(), "0,0");
    }

    #[test]
    fn diagonal_forms_in_standard_frame() {
        let ctx = Context::default();
        let c = diag(&[rational(1, 2), rational(-5, 1), rational(0, 1)]);
        let out = abelian_df_normal_form(&c, &ctx).unwrap().unwrap();
        assert_eq!(out.render(), "5,1/2,0");
        let f = abelian_df_normal_form(&c.to_f64(), &ctx).unwrap().unwrap();
        assert!((f.0[0] - 5.0).abs() < 1e-12 && (f.0[1] - 0.5).abs() < 1e-12 && f.0[2].abs() < 1e-12);
    }

    #[test]
    fn non_commuting_form_is_rejected() {
        let mut c = CubicForm::<Q>::zero(3);
        c.set(0, 1, 2, rational(1, 6));
        assert_eq!(abelian_df_normal_form(&c, &Context::default()).unwrap(), None);
    }

    #[test]
    fn irrational_coefficients_need_floating_mode() {
        // (x1 + x2)^3 = 2√2 · ((x1 + x2)/√2)^3.
        let mut c = CubicForm::<Q>::zero(2);
        for (i, j, k) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)] {
            c.set(i, j, k, rational(1, 1));
        }
        let ctx = Context::default();
        assert!(matches!(
            abelian_df_normal_form(&c, &ctx),
            Err(Error::ExactModeRequired(_))
        ));
        let f = abelian_df_normal_form(&c.to_f64(), &ctx).unwrap().unwrap();
        assert!((f.0[0] - 2.0 * 2f64.sqrt()).abs() < 1e-12 && f.0[1].abs() < 1e-12);
    }

    #[test]
    fn rotated_form_is_recovered_exactly() {
        let ctx = Context::default();
        let h = OrthogonalMap::new(
            Mat::from_rows(vec![
                vec![rational(3, 5), rational(-4, 5)],
                vec![rational(4, 5), rational(3, 5)],
            ])
            .unwrap(),
            &ctx,
        )
        .unwrap();
        let c = act_isotropy(&rational(1, 1), &h, &diag(&[rational(2, 1), rational(1, 1)])).unwrap();
        assert_eq!(abelian_df_normal_form(&c, &ctx).unwrap().unwrap().render(), "2,1");
        let f = abelian_df_normal_form(&c.to_f64(), &ctx).unwrap().unwrap();
        assert!((f.0[0] - 2.0).abs() < 1e-10 && (f.0[1] - 1.0).abs() < 1e-10);
    }
}
