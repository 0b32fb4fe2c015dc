//! Left-invariant connections in an orthonormal frame: Levi-Civita,
//! statistical and dual connections, and covariant derivatives of the cubic
//! form and the difference tensor.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::symtensor::{CubicForm, FourTensor, SymmetryClass};

/// Christoffel symbols `Γ_ij^k = ⟨∇_{e_i} e_j, e_k⟩`; the first index is the
/// derivative direction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoeffs<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> ConnectionCoeffs<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![S::zero(); n * n * n],
        }
    }

    /// Arbitrary coefficients, dense index `(i * n + j) * n + k`.
    pub fn from_dense(n: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != n * n * n {
            return Err(Error::LengthMismatch {
                expected: n * n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn entries_equal(&self, other: &Self, eps: f64) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, eps))
    }

    /// Entrywise mean `(self + other) / 2`.
    pub fn average(&self, other: &Self) -> Self {
        let half = S::from_ratio(1, 2);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a.clone() + b.clone()) * half.clone())
                .collect(),
        }
    }
}

/// The matrices `(K_u)_ij = ⟨K_{e_u} e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceTensor<S> {
    mats: Vec<Mat<S>>,
}

impl<S: Scalar> DifferenceTensor<S> {
    /// Wrap raw matrices; they must be symmetric and satisfy
    /// `(K_u)_ij = (K_i)_uj`.
    pub fn from_matrices(mats: Vec<Mat<S>>, eps: f64) -> Result<Self> {
        let n = mats.len();
        if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Validation(format!("expected {n} matrices of size {n}x{n}")));
        }
        let k = Self { mats };
        for u in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = k.get(u, i, j);
                    if !v.approx_eq(k.get(u, j, i), eps) || !v.approx_eq(k.get(i, u, j), eps) {
                        return Err(Error::Validation(format!(
                            "difference tensor is not totally symmetric at ({}, {}, {})",
                            u + 1,
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(k)
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, u: usize) -> &Mat<S> {
        &self.mats[u]
    }

    pub fn matrices(&self) -> &[Mat<S>] {
        &self.mats
    }

    #[inline]
    pub fn get(&self, u: usize, i: usize, j: usize) -> &S {
        &self.mats[u][(i, j)]
    }

    /// `K(v, w) = Σ v_u w_i (K_u)_ij e_j`.
    pub fn apply(&self, v: &[S], w: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for u in 0..n {
            for i in 0..n {
                let f = v[u].clone() * w[i].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    *o += f.clone() * self.get(u, i, j).clone();
                }
            }
        }
        out
    }

    /// `Σ_u w_u K_u`.
    pub fn combination(&self, w: &[S]) -> Mat<S> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| {
            let mut s = S::zero();
            for (u, wu) in w.iter().enumerate() {
                s += wu.clone() * self.get(u, i, j).clone();
            }
            s
        })
    }

    pub fn is_zero(&self) -> bool {
        self.mats
            .iter()
            .all(|m| (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].is_zero())))
    }
}

/// `Γ_ij^k = ½(a_ij^k + a_ki^j + a_kj^i)`.
pub fn levi_civita<S: Scalar>(spec: &LieAlgebra<S>) -> Result<ConnectionCoeffs<S>> {
    if !spec.is_orthonormal() {
        return Err(Error::NotOrthonormal);
    }
    let n = spec.dim();
    let a = spec.dense();
    let at = |i: usize, j: usize, k: usize| a[(i * n + j) * n + k].clone();
    let half = S::from_ratio(1, 2);
    Ok(ConnectionCoeffs::from_fn(n, |i, j, k| {
        (at(i, j, k) + at(k, i, j) + at(k, j, i)) * half.clone()
    }))
}

/// `(K_u)_ij = −½ C_uij`.
pub fn difference_tensor<S: Scalar>(c: &CubicForm<S>) -> DifferenceTensor<S> {
    let n = c.dim();
    let neg_half = S::from_ratio(-1, 2);
    let mats = (0..n)
        .map(|u| Mat::from_fn(n, n, |i, j| c.get(u, i, j) * neg_half.clone()))
        .collect();
    DifferenceTensor { mats }
}

/// Cubic form of a difference tensor, `C = −2 K`.
pub fn cubic_from_difference<S: Scalar>(k: &DifferenceTensor<S>) -> CubicForm<S> {
    let n = k.dim();
    let mut dense = Vec::with_capacity(n * n * n);
    for u in 0..n {
        for i in 0..n {
            for j in 0..n {
                dense.push(k.get(u, i, j).clone() * S::from_int(-2));
            }
        }
    }
    CubicForm::from_dense(n, &dense)
}

fn shift<S: Scalar>(gamma: &ConnectionCoeffs<S>, k: &DifferenceTensor<S>, sign: S) -> ConnectionCoeffs<S> {
    ConnectionCoeffs::from_fn(gamma.dim(), |i, j, l| {
        gamma.get(i, j, l).clone() + sign.clone() * k.get(i, j, l).clone()
    })
}

/// `Γ̃_ij^k = Γ_ij^k + (K_i)_jk`.
pub fn statistical_connection<S: Scalar>(
    gamma_lc: &ConnectionCoeffs<S>,
    k: &DifferenceTensor<S>,
) -> ConnectionCoeffs<S> {
    shift(gamma_lc, k, S::one())
}

/// `Γ̄_ij^k = Γ_ij^k − (K_i)_jk`.
pub fn dual_connection<S: Scalar>(gamma_lc: &ConnectionCoeffs<S>, k: &DifferenceTensor<S>) -> ConnectionCoeffs<S> {
    shift(gamma_lc, k, -S::one())
}

/// `max |Γ_ij^k − Γ_ji^k − a_ij^k|`.
pub fn torsion_defect<S: Scalar>(gamma: &ConnectionCoeffs<S>, spec: &LieAlgebra<S>) -> S {
    let n = gamma.dim();
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = (gamma.get(i, j, k).clone() - gamma.get(j, i, k).clone() - spec.a(i, j, k)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    worst
}

/// `max |Γ̃_ij^k + Γ̄_ik^j|`, zero for a pair of dual connections in an
/// orthonormal frame.
pub fn duality_defect<S: Scalar>(gamma: &ConnectionCoeffs<S>, dual: &ConnectionCoeffs<S>) -> S {
    let n = gamma.dim();
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = (gamma.get(i, j, k).clone() + dual.get(i, k, j).clone()).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    worst
}

/// Dense 3-index array, index `(t * n + i) * n + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTensor<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> ThreeTensor<S> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: usize, i: usize, j: usize) -> &S {
        &self.data[(t * self.n + i) * self.n + j]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Largest deviation from total symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for t in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = self.get(t, i, j);
                    for w in [self.get(t, j, i), self.get(i, t, j)] {
                        worst = worst.max((v.clone() - w.clone()).to_f64().abs());
                    }
                }
            }
        }
        worst
    }

    /// The symmetric cubic form, when the array is totally symmetric.
    pub fn to_cubic(&self, eps: f64) -> Option<CubicForm<S>> {
        let n = self.n;
        let symmetric = (0..n).all(|t| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let v = self.get(t, i, j);
                    v.approx_eq(self.get(t, j, i), eps) && v.approx_eq(self.get(i, t, j), eps)
                })
            })
        });
        symmetric.then(|| CubicForm::from_dense(n, &self.data))
    }
}

/// `(∇g)_tij = −Γ_ti^j − Γ_tj^i`: the cubic form of a statistical
/// connection, zero for a metric connection.
pub fn metric_compat_cubic<S: Scalar>(gamma: &ConnectionCoeffs<S>) -> ThreeTensor<S> {
    let n = gamma.dim();
    let mut data = Vec::with_capacity(n * n * n);
    for t in 0..n {
        for i in 0..n {
            for j in 0..n {
                data.push(-gamma.get(t, i, j).clone() - gamma.get(t, j, i).clone());
            }
        }
    }
    ThreeTensor { n, data }
}

/// `(∇C)_ijkt = (∇_{e_t} C)(e_i, e_j, e_k)
///  = −Σ_u (Γ_ti^u C_ujk + Γ_tj^u C_iuk + Γ_tk^u C_iju)`,
/// derivative slot last.
pub fn nabla_cubic<S: Scalar>(gamma: &ConnectionCoeffs<S>, c: &CubicForm<S>) -> FourTensor<S> {
    let n = c.dim();
    let cd = c.dense();
    let cc = |i: usize, j: usize, k: usize| &cd[(i * n + j) * n + k];
    FourTensor::from_fn(n, SymmetryClass::NablaC, |i, j, k, t| {
        let mut s = S::zero();
        for u in 0..n {
            let g1 = gamma.get(t, i, u);
            if !g1.is_zero() {
                s += g1.clone() * cc(u, j, k).clone();
            }
            let g2 = gamma.get(t, j, u);
            if !g2.is_zero() {
                s += g2.clone() * cc(i, u, k).clone();
            }
            let g3 = gamma.get(t, k, u);
            if !g3.is_zero() {
                s += g3.clone() * cc(i, j, u).clone();
            }
        }
        -s
    })
}

/// `(∇_t K)_ij^l = Σ_m (K_i)_jm Γ̃_tm^l − Σ_u Γ̃_ti^u (K_u)_jl − Σ_u Γ̃_tj^u (K_i)_ul`,
/// stored with index order `(t, i, j, l)`.
pub fn nabla_k<S: Scalar>(gamma: &ConnectionCoeffs<S>, k: &DifferenceTensor<S>) -> FourTensor<S> {
    let n = k.dim();
    FourTensor::from_fn(n, SymmetryClass::General, |t, i, j, l| {
        let mut s = S::zero();
        for m in 0..n {
            s += k.get(i, j, m).clone() * gamma.get(t, m, l).clone();
            s -= gamma.get(t, i, m).clone() * k.get(m, j, l).clone();
            s -= gamma.get(t, j, m).clone() * k.get(i, m, l).clone();
        }
        s
    })
}
