//! Small dense matrices over any [`Scalar`], with the elimination routines
//! the classifiers need (reduced echelon form, nullspaces, Cholesky).

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::LengthMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc += self[(i, k)].clone() * vk.clone();
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, eps: f64) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)].approx_eq(&self[(j, i)], eps)))
    }

    /// In-place Gauss–Jordan reduction; returns the pivot columns.
    ///
    /// Exact mode pivots on the first nonzero entry of a column so the
    /// result is the canonical reduced echelon form. Floating mode uses
    /// partial pivoting and treats entries `<= eps` as zero.
    pub fn rref(&mut self, eps: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = if S::EXACT {
                (r..self.rows).find(|&i| !self[(i, c)].is_negligible(eps))
            } else {
                (r..self.rows)
                    .filter(|&i| !self[(i, c)].is_negligible(eps))
                    .max_by(|&a, &b| self[(a, c)].to_f64().abs().total_cmp(&self[(b, c)].to_f64().abs()))
            };
            let Some(p) = pivot_row else { continue };
            self.swap_rows(r, p);
            let inv = S::one() / self[(r, c)].clone();
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = self[(r, j)].clone() * f.clone();
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, eps: f64) -> usize {
        self.clone().rref(eps).len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, with a 1
    /// in that column.
    pub fn nullspace(&self, eps: f64) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref(eps);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = b`; `None` when the system is inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[S], eps: f64) -> Option<Vec<S>> {
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref(eps);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self, eps: f64) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref(eps);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Lower-triangular `L` with `L Lᵀ = self`.
    pub fn cholesky(&self, eps: f64) -> Result<Self> {
        if !self.is_symmetric(eps) {
            return Err(Error::NotPositiveDefinite("matrix is not symmetric".into()));
        }
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].clone();
            for k in 0..j {
                d -= l[(j, k)].clone() * l[(j, k)].clone();
            }
            if d <= S::zero() || d.is_negligible(eps) {
                return Err(Error::NotPositiveDefinite(format!(
                    "leading minor {} is not positive",
                    j + 1
                )));
            }
            let root = d.sqrt().ok_or(Error::ExactModeRequired(
                "Cholesky pivot has no rational square root; use floating mode",
            ))?;
            l[(j, j)] = root.clone();
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    s -= l[(i, k)].clone() * l[(j, k)].clone();
                }
                l[(i, j)] = s / root.clone();
            }
        }
        Ok(l)
    }

    /// `‖selfᵀ self − I‖_max`.
    pub fn orthogonality_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.transpose().mul(self).sub(&Self::identity(self.rows)).max_abs()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Sign class of a symmetric form, decided exactly by symmetric elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveSemidefinite,
    NegativeSemidefinite,
    Indefinite,
}

/// Classify a symmetric matrix. Zero matrices count as positive
/// semidefinite.
pub fn definiteness<S: Scalar>(q: &Mat<S>, eps: f64) -> Definiteness {
    if is_psd(q, eps) {
        Definiteness::PositiveSemidefinite
    } else if is_psd(&q.scale(&-S::one()), eps) {
        Definiteness::NegativeSemidefinite
    } else {
        Definiteness::Indefinite
    }
}

// Symmetric Gaussian elimination: a zero pivot must have a zero row, a
// negative pivot disproves semidefiniteness.
fn is_psd<S: Scalar>(q: &Mat<S>, eps: f64) -> bool {
    let n = q.rows();
    let mut m = q.clone();
    for k in 0..n {
        let p = m[(k, k)].clone();
        if p.is_negligible(eps) {
            if (k + 1..n).any(|j| !m[(k, j)].is_negligible(eps)) {
                return false;
            }
            continue;
        }
        if p < S::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = m[(i, k)].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = m[(k, j)].clone() * f.clone();
                m[(i, j)] -= v;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = Mat::from_rows(vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]]).unwrap();
        let ns = m.nullspace(0.0);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x == &r(0)));
        }
    }

    #[test]
    fn exact_inverse_and_solve() {
        let m = Mat::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(1)]]).unwrap();
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(m.solve(&[r(3), r(2)], 0.0).unwrap(), vec![r(1), r(1)]);
        let singular = Mat::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(1)]]).unwrap();
        assert!(singular.inverse(0.0).is_none());
        assert!(singular.solve(&[r(1), r(2)], 0.0).is_none());
    }

    #[test]
    fn cholesky_exact_perfect_squares() {
        let g = Mat::from_rows(vec![vec![r(4), r(2)], vec![r(2), r(5)]]).unwrap();
        let l = g.cholesky(0.0).unwrap();
        assert_eq!(l.mul(&l.transpose()), g);
        let not_pd = Mat::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(1)]]).unwrap();
        assert!(matches!(not_pd.cholesky(0.0), Err(Error::NotPositiveDefinite(_))));
        let irrational = Mat::<Rational>::diagonal(&[r(2)]);
        assert!(matches!(irrational.cholesky(0.0), Err(Error::ExactModeRequired(_))));
    }

    #[test]
    fn definiteness_classes() {
        let psd = Mat::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(1)]]).unwrap();
        assert_eq!(definiteness(&psd, 0.0), Definiteness::PositiveSemidefinite);
        let nsd = Mat::<Rational>::diagonal(&[r(-1), r(0)]);
        assert_eq!(definiteness(&nsd, 0.0), Definiteness::NegativeSemidefinite);
        let ind = Mat::<Rational>::diagonal(&[r(1), r(-1)]);
        assert_eq!(definiteness(&ind, 0.0), Definiteness::Indefinite);
        let zero_pivot = Mat::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]).unwrap();
        assert_eq!(definiteness(&zero_pivot, 0.0), Definiteness::Indefinite);
    }
}
