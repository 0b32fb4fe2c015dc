//! Symmetric cubic forms, their polynomial view, dense (0,4)-tensors and
//! the isotropy action on cubic forms.
//!
//! Polynomial convention: the monomial `x_{i1} x_{i2} x_{i3}` is the
//! symmetrized tensor `(1/3!) Σ_σ x_{iσ1} ⊗ x_{iσ2} ⊗ x_{iσ3}`. A coefficient
//! `λ` on a monomial with multiplicities `(m_1, …)` therefore contributes
//! `λ · Π m_t! / 3!` to the matching tensor component: `λx_1³ → C_111 = λ`,
//! `μx_1x_2² → C_122 = μ/3`, `νx_1x_2x_3 → C_123 = ν/6`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{parse_scalar, Context, Scalar};

/// Sorted, 0-based index multiset of a degree-3 monomial. The derived order
/// is the monomial order `x_1³ < x_1²x_2 < … < x_n³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([usize; 3]);

impl Monomial {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        Self(idx)
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }

    /// `Π m_t!` over the multiplicities: 6, 2 or 1.
    pub fn multiplicity_factorial(&self) -> i64 {
        let [a, b, c] = self.0;
        match (a == b, b == c) {
            (true, true) => 6,
            (true, false) | (false, true) => 2,
            (false, false) => 1,
        }
    }

    /// All degree-3 monomials in `n` variables, in monomial order.
    pub fn all(n: usize) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(cubic_dim(n));
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push(Monomial([i, j, k]));
                }
            }
        }
        out
    }

    /// Position in [`Monomial::all`].
    pub fn position(&self, n: usize) -> usize {
        let [i, j, k] = self.0;
        let before_i: usize = (0..i).map(|a| (n - a) * (n - a + 1) / 2).sum();
        let before_j: usize = (i..j).map(|b| n - b).sum();
        before_i + before_j + (k - j)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for v in [a, b, c] {
            match groups.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => groups.push((v, 1)),
            }
        }
        for (v, count) in groups {
            write!(f, "x{}", v + 1)?;
            if count > 1 {
                write!(f, "^{count}")?;
            }
        }
        Ok(())
    }
}

/// `binom(n + 2, 3)`, the dimension of the cubic-form space.
pub fn cubic_dim(n: usize) -> usize {
    n * (n + 1) * (n + 2) / 6
}

/// Fully symmetric (0,3)-tensor stored once per index multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm<S> {
    n: usize,
    comps: Vec<S>,
}

impl<S: Scalar> CubicForm<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            comps: vec![S::zero(); cubic_dim(n)],
        }
    }

    /// Components listed in monomial order.
    pub fn from_components(n: usize, comps: Vec<S>) -> Result<Self> {
        if comps.len() != cubic_dim(n) {
            return Err(Error::LengthMismatch {
                expected: cubic_dim(n),
                got: comps.len(),
            });
        }
        Ok(Self { n, comps })
    }

    /// Symmetric form built from a dense `n³` array; only the sorted-index
    /// entries are read.
    pub fn from_dense(n: usize, dense: &[S]) -> Self {
        let comps = Monomial::all(n)
            .iter()
            .map(|m| {
                let [i, j, k] = m.indices();
                dense[(i * n + j) * n + k].clone()
            })
            .collect();
        Self { n, comps }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.comps[Monomial::new(i, j, k).position(self.n)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        let p = Monomial::new(i, j, k).position(self.n);
        self.comps[p] = v;
    }

    pub fn components(&self) -> &[S] {
        &self.comps
    }

    pub fn dense(&self) -> Vec<S> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push(self.get(i, j, k));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            n: self.n,
            comps: self.comps.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CubicForm<T> {
        CubicForm {
            n: self.n,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> CubicForm<f64> {
        self.convert(|v| v.to_f64())
    }
}

/// Degree-3 polynomial `Σ λ_m x^m` with only nonzero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialView<S> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> PolynomialView<S> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Add `coeff` times the monomial with the given 0-based indices.
    pub fn add_term(&mut self, indices: [usize; 3], coeff: S) -> Result<()> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "variable x{} in a polynomial of {} variables",
                bad + 1,
                self.n
            )));
        }
        let m = Monomial::new(indices[0], indices[1], indices[2]);
        let slot = self.terms.entry(m).or_insert_with(S::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn with_term(mut self, indices: [usize; 3], coeff: S) -> Result<Self> {
        self.add_term(indices, coeff)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> fmt::Display for PolynomialView<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = *c < S::zero();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != S::one() {
                let text = mag.render();
                if text.contains('/') || text.contains('e') {
                    write!(f, "({text})")?;
                } else {
                    f.write_str(&text)?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Tensor components of a polynomial under the symmetrization convention.
pub fn cubic_from_polynomial<S: Scalar>(view: &PolynomialView<S>, n: usize) -> Result<CubicForm<S>> {
    let mut c = CubicForm::zero(n);
    for (m, lambda) in view.terms() {
        if m.indices().iter().any(|&i| i >= n) {
            return Err(Error::IndexOutOfRange(format!("monomial {m} in dimension {n}")));
        }
        let v = lambda.clone() * S::from_ratio(m.multiplicity_factorial(), 6);
        c.comps[m.position(n)] = v;
    }
    Ok(c)
}

/// Inverse of [`cubic_from_polynomial`].
pub fn polynomial_from_cubic<S: Scalar>(c: &CubicForm<S>) -> PolynomialView<S> {
    let mut view = PolynomialView::new(c.n);
    for (m, v) in Monomial::all(c.n).into_iter().zip(&c.comps) {
        if !v.is_zero() {
            let lambda = v.clone() * S::from_ratio(6, m.multiplicity_factorial());
            view.terms.insert(m, lambda);
        }
    }
    view
}

/// Declared index symmetry of a [`FourTensor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// Symmetric in the first three slots (∇C, derivative slot last).
    NablaC,
    /// Antisymmetric in (1,2) and (3,4), symmetric under pair swap.
    Curvature,
    General,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::NablaC => "nabla_c",
            SymmetryClass::Curvature => "curvature",
            SymmetryClass::General => "general",
        }
    }
}

/// Dense (0,4)-tensor with `n⁴` components.
#[derive(Clone, Debug, PartialEq)]
pub struct FourTensor<S> {
    n: usize,
    data: Vec<S>,
    class: SymmetryClass,
}

impl<S: Scalar> FourTensor<S> {
    pub fn zeros(n: usize, class: SymmetryClass) -> Self {
        Self {
            n,
            data: vec![S::zero(); n * n * n * n],
            class,
        }
    }

    pub fn from_fn(n: usize, class: SymmetryClass, mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { n, data, class }
    }

    pub fn from_data(n: usize, data: Vec<S>, class: SymmetryClass) -> Result<Self> {
        if data.len() != n * n * n * n {
            return Err(Error::LengthMismatch {
                expected: n * n * n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data, class })
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.data[self.idx(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: S) {
        let p = self.idx(i, j, k, l);
        self.data[p] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn with_class(mut self, class: SymmetryClass) -> Self {
        self.class = class;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            class: if self.class == other.class {
                self.class
            } else {
                SymmetryClass::General
            },
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
            class: self.class,
        }
    }

    pub fn is_zero_within(&self, eps: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(eps))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
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

    /// Largest violation of the curvature symmetries: antisymmetry in
    /// (1,2) and (3,4) and pair swap.
    pub fn curvature_symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l).clone();
                        for w in [
                            v.clone() + self.get(j, i, k, l).clone(),
                            v.clone() + self.get(i, j, l, k).clone(),
                            v.clone() - self.get(k, l, i, j).clone(),
                        ] {
                            worst = worst.max(w.to_f64().abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest first-Bianchi residual `R_ijkl + R_jkil + R_kijl`.
    pub fn bianchi_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s =
                            self.get(i, j, k, l).clone() + self.get(j, k, i, l).clone() + self.get(k, i, j, l).clone();
                        worst = worst.max(s.to_f64().abs());
                    }
                }
            }
        }
        worst
    }

    /// Exact in exact mode: every curvature symmetry holds entrywise.
    pub fn has_curvature_symmetries(&self, eps: f64) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        if !(v.clone() + self.get(j, i, k, l).clone()).is_negligible(eps)
                            || !(v.clone() + self.get(i, j, l, k).clone()).is_negligible(eps)
                            || !v.approx_eq(self.get(k, l, i, j), eps)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> FourTensor<f64> {
        FourTensor {
            n: self.n,
            data: self.data.iter().map(|v| v.to_f64()).collect(),
            class: self.class,
        }
    }
}

/// Orthogonal change of frame `h` (`hᵀh = I`).
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMap<S>(Mat<S>);

impl<S: Scalar> OrthogonalMap<S> {
    /// Exact mode requires `hᵀh = I` exactly; floating mode allows
    /// `‖hᵀh − I‖_max ≤ ε`.
    pub fn new(m: Mat<S>, ctx: &Context) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotOrthogonal { defect: f64::INFINITY });
        }
        let residual = m.transpose().mul(&m).sub(&Mat::identity(m.rows()));
        let exact_ok = (0..m.rows()).all(|i| (0..m.rows()).all(|j| residual[(i, j)].is_negligible(ctx.eps)));
        if !exact_ok {
            return Err(Error::NotOrthogonal {
                defect: residual.max_abs(),
            });
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(Mat::identity(n))
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }
}

/// `(r, h).C = r · C(h⁻¹·, h⁻¹·, h⁻¹·)`, i.e.
/// `C'_ijk = r Σ_abc (h⁻¹)_ai (h⁻¹)_bj (h⁻¹)_ck C_abc`.
pub fn act_isotropy<S: Scalar>(r: &S, h: &OrthogonalMap<S>, c: &CubicForm<S>) -> Result<CubicForm<S>> {
    if *r <= S::zero() {
        return Err(Error::NonPositiveScale);
    }
    let n = c.dim();
    if h.dim() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: h.dim(),
        });
    }
    let hinv = h.inverse();
    let hi = hinv.matrix();
    let src = c.dense();
    // Contract one slot at a time: O(n⁴).
    let contract = |t: &[S], slot: usize| -> Vec<S> {
        let mut out = vec![S::zero(); n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = S::zero();
                    for a in 0..n {
                        let (src_idx, coef) = match slot {
                            0 => ((a * n + y) * n + z, &hi[(a, x)]),
                            1 => ((x * n + a) * n + z, &hi[(a, y)]),
                            _ => ((x * n + y) * n + a, &hi[(a, z)]),
                        };
                        if !coef.is_zero() {
                            acc += coef.clone() * t[src_idx].clone();
                        }
                    }
                    out[(x * n + y) * n + z] = acc;
                }
            }
        }
        out
    };
    let t = contract(&src, 0);
    let t = contract(&t, 1);
    let t = contract(&t, 2);
    Ok(CubicForm::from_dense(n, &t).scale(r))
}

/// `max |T_ijkt − T_ijtk|` for a tensor symmetric in its first three slots;
/// zero exactly when `T` is totally symmetric.
pub fn total_symmetry_defect<S: Scalar>(t: &FourTensor<S>) -> Result<S> {
    if t.class() != SymmetryClass::NablaC {
        return Err(Error::WrongSymmetryClass {
            expected: SymmetryClass::NablaC.name(),
            got: t.class().name(),
        });
    }
    let n = t.dim();
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in k + 1..n {
                    let d = (t.get(i, j, k, l).clone() - t.get(i, j, l, k).clone()).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Ordered pair `(i, j)` with `i < j`, 0-based.
pub type IndexPair = (usize, usize);

/// Coefficients in the `ω_ij ⊙ ω_kl` basis, keyed by `((i,j),(k,l))` with
/// `(i,j) ≤ (k,l)`: `R_ijij` on the diagonal, `2 R_ijkl` off it.
pub fn omega_coefficients<S: Scalar>(r: &FourTensor<S>) -> Result<BTreeMap<(IndexPair, IndexPair), S>> {
    if r.class() != SymmetryClass::Curvature {
        return Err(Error::WrongSymmetryClass {
            expected: SymmetryClass::Curvature.name(),
            got: r.class().name(),
        });
    }
    let pairs = index_pairs(r.dim());
    let mut out = BTreeMap::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a..] {
            let v = r.get(i, j, k, l).clone();
            let coef = if (i, j) == (k, l) { v } else { v * S::from_int(2) };
            out.insert(((i, j), (k, l)), coef);
        }
    }
    Ok(out)
}

/// Curvature-class tensor with the given ω⊙ω coefficients (inverse of
/// [`omega_coefficients`]).
pub fn from_omega_coefficients<S: Scalar>(
    n: usize,
    coeffs: &BTreeMap<(IndexPair, IndexPair), S>,
) -> Result<FourTensor<S>> {
    let mut t = FourTensor::zeros(n, SymmetryClass::Curvature);
    for (&((i, j), (k, l)), c) in coeffs {
        if !(i < j && k < l && (i, j) <= (k, l) && l < n) {
            return Err(Error::IndexOutOfRange(format!(
                "ω pair ({}{}, {}{}) in dimension {n}",
                i + 1,
                j + 1,
                k + 1,
                l + 1
            )));
        }
        let v = if (i, j) == (k, l) {
            c.clone()
        } else {
            c.clone() / S::from_int(2)
        };
        for (p, q) in [((i, j), (k, l)), ((k, l), (i, j))] {
            t.set(p.0, p.1, q.0, q.1, v.clone());
            t.set(p.1, p.0, q.0, q.1, -v.clone());
            t.set(p.0, p.1, q.1, q.0, -v.clone());
            t.set(p.1, p.0, q.1, q.0, v.clone());
        }
    }
    Ok(t)
}

pub fn index_pairs(n: usize) -> Vec<IndexPair> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

// ---------------------------------------------------------------------------
// Ingestion record

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicBasis {
    Polynomial,
    Tensor,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicTerm {
    pub monomial: Vec<usize>,
    pub c: String,
}

/// `{ "basis": "polynomial" | "tensor", "terms": [{"monomial":[1,1,1],"c":"4"}] }`.
///
/// In the tensor basis each term sets the component `C_ijk` for the listed
/// (1-based) indices; later terms for the same multiset overwrite earlier
/// ones. In the polynomial basis coefficients accumulate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicRecord {
    pub basis: CubicBasis,
    #[serde(default)]
    pub terms: Vec<CubicTerm>,
}

impl CubicRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        crate::record::from_json(text)
    }

    /// Polynomial-basis record of `c`, terms in monomial order.
    pub fn from_cubic<S: Scalar>(c: &CubicForm<S>) -> Self {
        let terms = polynomial_from_cubic(c)
            .terms()
            .map(|(m, v)| CubicTerm {
                monomial: m.indices().iter().map(|i| i + 1).collect(),
                c: v.render(),
            })
            .collect();
        Self {
            basis: CubicBasis::Polynomial,
            terms,
        }
    }

    pub fn build<S: Scalar>(&self, n: usize) -> Result<CubicForm<S>> {
        let mut view = PolynomialView::new(n);
        let mut tensor = CubicForm::zero(n);
        for (idx, term) in self.terms.iter().enumerate() {
            let path = |f: &str| format!("terms[{idx}].{f}");
            if term.monomial.len() != 3 {
                return Err(crate::record::field_error(
                    &path("monomial"),
                    &format!("expected 3 indices, got {}", term.monomial.len()),
                ));
            }
            if let Some(&bad) = term.monomial.iter().find(|&&i| i == 0 || i > n) {
                return Err(crate::record::field_error(
                    &path("monomial"),
                    &format!("index {bad} outside 1..={n}"),
                ));
            }
            let c: S = parse_scalar(&term.c).map_err(|e| crate::record::field_error(&path("c"), &e.to_string()))?;
            let [i, j, k] = [term.monomial[0] - 1, term.monomial[1] - 1, term.monomial[2] - 1];
            match self.basis {
                CubicBasis::Polynomial => view.add_term([i, j, k], c)?,
                CubicBasis::Tensor => tensor.set(i, j, k, c),
            }
        }
        match self.basis {
            CubicBasis::Polynomial => cubic_from_polynomial(&view, n),
            CubicBasis::Tensor => Ok(tensor),
        }
    }
}
