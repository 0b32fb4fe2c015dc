//! Conjugate-symmetric cubic forms as an exact nullspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::connection::{levi_civita, nabla_cubic};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Rational, Scalar};
use crate::symtensor::{cubic_dim, cubic_from_polynomial, CubicForm, Monomial, PolynomialView};

/// Basis of the space of cubic forms `C` with `∇^g C` totally symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct CsBasis<S> {
    n: usize,
    elements: Vec<CubicForm<S>>,
}

impl<S: Scalar> CsBasis<S> {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[CubicForm<S>] {
        &self.elements
    }

    /// `Σ c_i B_i`.
    pub fn combine(&self, coeffs: &[S]) -> CubicForm<S> {
        assert_eq!(coeffs.len(), self.dim());
        self.elements
            .iter()
            .zip(coeffs)
            .fold(CubicForm::zero(self.n), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    /// Coordinates of `c` in the basis, or `None` when `c` is outside the
    /// span (exact in exact mode, within `eps` otherwise).
    pub fn coordinates(&self, c: &CubicForm<S>, eps: f64) -> Option<Vec<S>> {
        let rows = cubic_dim(self.n);
        let m = Mat::from_fn(rows, self.dim(), |r, j| self.elements[j].components()[r].clone());
        let x = m.solve(c.components(), eps)?;
        let back = self.combine(&x);
        (back.max_abs_diff(c) <= eps || (S::EXACT && &back == c)).then_some(x)
    }

    /// Largest component of `c − proj(c)` after a least-squares style
    /// projection onto the span (zero when `c` is in the span).
    pub fn projection_residual(&self, c: &CubicForm<S>) -> f64 {
        let rows = cubic_dim(self.n);
        if self.dim() == 0 {
            return c.components().iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        }
        let m = Mat::from_fn(rows, self.dim(), |r, j| self.elements[j].components()[r].clone());
        let mt = m.transpose();
        let normal = mt.mul(&m);
        let rhs = mt.mul_vec(c.components());
        match normal.solve(&rhs, 0.0) {
            Some(x) => self.combine(&x).max_abs_diff(c),
            None => f64::INFINITY,
        }
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> CsBasis<T> {
        CsBasis {
            n: self.n,
            elements: self.elements.iter().map(|e| e.convert(f)).collect(),
        }
    }
}

/// Matrix of the linear map `C ↦ (T_ijkt − T_ijtk)` with `T = ∇^g C`, in
/// polynomial-coefficient coordinates ordered by monomial order.
fn cs_defect_matrix<S: Scalar>(spec: &LieAlgebra<S>) -> Result<Mat<S>> {
    let n = spec.dim();
    let lc = levi_civita(spec)?;
    let monos = Monomial::all(n);
    let mut columns = Vec::with_capacity(monos.len());
    for m in &monos {
        let view = PolynomialView::new(n).with_term(m.indices(), S::one())?;
        let t = nabla_cubic(&lc, &cubic_from_polynomial(&view, n)?);
        let mut col = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    for l in k + 1..n {
                        col.push(t.get(i, j, k, l).clone() - t.get(i, j, l, k).clone());
                    }
                }
            }
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    Ok(Mat::from_fn(rows, monos.len(), |r, c| columns[c][r].clone()))
}

/// Exact basis of the conjugate-symmetric cubic forms.
///
/// The nullspace is taken in reduced echelon form over the monomial order
/// `x_1³ < x_1²x_2 < …`; each vector is then rescaled so that its difference
/// tensor `K = −½C` has coprime integer entries and a positive leading
/// coefficient. For the hyperbolic algebra this yields
/// `4x_1³ + 6Σ x_1x_i²`.
pub fn cs_subspace<S: Scalar>(spec: &LieAlgebra<S>) -> Result<CsBasis<S>> {
    if !S::EXACT {
        return Err(Error::ExactModeRequired(
            "the conjugate-symmetric subspace is computed by exact elimination",
        ));
    }
    let n = spec.dim();
    let m = cs_defect_matrix(spec)?;
    let null = if m.rows() == 0 {
        (0..cubic_dim(n))
            .map(|c| {
                (0..cubic_dim(n))
                    .map(|r| if r == c { S::one() } else { S::zero() })
                    .collect()
            })
            .collect()
    } else {
        m.nullspace(0.0)
    };
    let monos = Monomial::all(n);
    let mut elements = Vec::with_capacity(null.len());
    for v in null {
        let mut view = PolynomialView::new(n);
        for (m, coeff) in monos.iter().zip(&v) {
            if !coeff.is_zero() {
                view.add_term(m.indices(), coeff.clone())?;
            }
        }
        let c = cubic_from_polynomial(&view, n)?;
        elements.push(normalize(&c));
    }
    Ok(CsBasis { n, elements })
}

// Scale so that −½C has coprime integer entries; the scale is positive, so
// the leading coefficient keeps the sign it had in the echelon basis (+1).
fn normalize<S: Scalar>(c: &CubicForm<S>) -> CubicForm<S> {
    let k: Vec<Rational> = c
        .components()
        .iter()
        .map(|v| v.to_rational().unwrap_or_default() * Rational::new(BigInt::from(-1), BigInt::from(2)))
        .collect();
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for v in k.iter().filter(|v| !v.is_zero()) {
        lcm = lcm.lcm(v.denom());
        gcd = gcd.gcd(v.numer());
    }
    if gcd.is_zero() {
        return c.clone();
    }
    let factor = Rational::new(lcm, gcd.abs());
    c.scale(&S::from_rational(&factor))
}
