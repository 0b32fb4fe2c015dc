//! Finite-dimensional real Lie algebras given by structure constants.
//!
//! Indices are 0-based in the API and 1-based in every external format.
//! `a(i, j, k)` is the coefficient of `e_k` in `[e_i, e_j]`; in an
//! orthonormal frame this is `⟨[e_i, e_j], e_k⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{parse_scalar, Context, Rational, Scalar};

/// Built-in Lie algebra families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// ℝⁿ, all brackets zero.
    Abelian,
    /// Solvable algebra of real hyperbolic space: `[e_1, e_i] = e_i`.
    Rhn,
    /// Three-dimensional Heisenberg algebra: `[e_1, e_2] = e_3`.
    Heisenberg3,
    /// Heisenberg algebra times an abelian factor ℝ^{n−3}.
    HeisenbergProduct,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Abelian,
        Family::Rhn,
        Family::Heisenberg3,
        Family::HeisenbergProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Abelian => "abelian",
            Family::Rhn => "rhn",
            Family::Heisenberg3 => "heisenberg3",
            Family::HeisenbergProduct => "heisenberg_product",
        }
    }

    pub fn check_dim(self, n: usize) -> Result<()> {
        let (ok, constraint) = match self {
            Family::Abelian => (n >= 1, "n >= 1"),
            Family::Rhn => (n >= 2, "n >= 2"),
            Family::Heisenberg3 => (n == 3, "n = 3"),
            Family::HeisenbergProduct => (n >= 3, "n >= 3"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionOutOfRange {
                family: self.name(),
                constraint,
                n,
            })
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Structure constants of a Lie algebra in a chosen frame.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    n: usize,
    constants: BTreeMap<(usize, usize, usize), S>,
    orthonormal: bool,
    family: Option<Family>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Build from `i < j` entries (0-based); the antisymmetric completion is
    /// applied here. Entries with `i > j` are folded in with a sign flip;
    /// `i == j` entries must vanish.
    pub fn from_upper_entries(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), S)>,
        orthonormal: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("dimension must be positive".into()));
        }
        let mut constants: BTreeMap<(usize, usize, usize), S> = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "bracket ({}, {}, {}) for dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::Validation(format!("[e_{0}, e_{0}] must vanish", i + 1)));
            }
            let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            let slot = constants.entry((i, j, k)).or_insert_with(S::zero);
            *slot += c.clone();
            let lower = constants.entry((j, i, k)).or_insert_with(S::zero);
            *lower -= c;
        }
        constants.retain(|_, v| !v.is_zero());
        Ok(Self {
            n,
            constants,
            orthonormal,
            family: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn a(&self, i: usize, j: usize, k: usize) -> S {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero structure constants, both orientations.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), &S)> {
        self.constants.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Dense `n³` copy, index `(i * n + j) * n + k`.
    pub fn dense(&self) -> Vec<S> {
        let n = self.n;
        let mut out = vec![S::zero(); n * n * n];
        for (&(i, j, k), v) in &self.constants {
            out[(i * n + j) * n + k] = v.clone();
        }
        out
    }

    /// Largest `|a_{ij}^k + a_{ji}^k|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = self.a(i, j, k) + self.a(j, i, k);
                    worst = worst.max(s.to_f64().abs());
                }
            }
        }
        worst
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra {
            n: self.n,
            constants: self
                .constants
                .iter()
                .map(|(k, v)| (*k, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            orthonormal: self.orthonormal,
            family: self.family,
        }
    }

    /// Same constants with every entry multiplied by `s`.
    pub fn scaled(&self, s: &S) -> Self {
        let mut out = self.clone();
        for v in out.constants.values_mut() {
            *v = v.clone() * s.clone();
        }
        out.constants.retain(|_, v| !v.is_zero());
        out
    }
}

impl LieAlgebra<Rational> {
    pub fn to_f64(&self) -> LieAlgebra<f64> {
        self.convert(Scalar::to_f64)
    }
}

/// Standard-basis structure constants of a built-in family, frame marked
/// orthonormal.
pub fn build_builtin<S: Scalar>(family: Family, n: usize) -> Result<LieAlgebra<S>> {
    family.check_dim(n)?;
    let entries: Vec<((usize, usize, usize), S)> = match family {
        Family::Abelian => Vec::new(),
        Family::Rhn => (1..n).map(|i| ((0, i, i), S::one())).collect(),
        Family::Heisenberg3 | Family::HeisenbergProduct => vec![((0, 1, 2), S::one())],
    };
    let mut spec = LieAlgebra::from_upper_entries(n, entries, true)?;
    spec.family = Some(family);
    Ok(spec)
}

/// Largest absolute cyclic Jacobi sum
/// `Σ_m (a_{ij}^m a_{mk}^l + a_{jk}^m a_{mi}^l + a_{ki}^m a_{mj}^l)`.
pub fn jacobi_defect<S: Scalar>(spec: &LieAlgebra<S>) -> S {
    let n = spec.dim();
    let a = spec.dense();
    let at = |i: usize, j: usize, k: usize| &a[(i * n + j) * n + k];
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = S::zero();
                    for m in 0..n {
                        s += at(i, j, m).clone() * at(m, k, l).clone()
                            + at(j, k, m).clone() * at(m, i, l).clone()
                            + at(k, i, m).clone() * at(m, j, l).clone();
                    }
                    let s = s.abs();
                    if s > worst {
                        worst = s;
                    }
                }
            }
        }
    }
    worst
}

/// `[X, Y]_k = Σ_{ij} X_i Y_j a_{ij}^k`.
pub fn bracket<S: Scalar>(spec: &LieAlgebra<S>, x: &[S], y: &[S]) -> Result<Vec<S>> {
    let n = spec.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let mut out = vec![S::zero(); n];
    for ((i, j, k), c) in spec.nonzero() {
        out[k] += x[i].clone() * y[j].clone() * c.clone();
    }
    Ok(out)
}

/// Symmetric positive-definite inner-product matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S>(Mat<S>);

impl<S: Scalar> GramMatrix<S> {
    pub fn new(m: Mat<S>, ctx: &Context) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotPositiveDefinite("gram matrix is not square".into()));
        }
        if !m.is_symmetric(ctx.eps) {
            return Err(Error::NotPositiveDefinite("gram matrix is not symmetric".into()));
        }
        // Sylvester's criterion through the LDLᵀ pivots (no square roots).
        let n = m.rows();
        let mut work = m.clone();
        for k in 0..n {
            let p = work[(k, k)].clone();
            if p <= S::zero() || p.is_negligible(ctx.eps) {
                return Err(Error::NotPositiveDefinite(format!(
                    "leading principal minor {} is not positive",
                    k + 1
                )));
            }
            for i in k + 1..n {
                let f = work[(i, k)].clone() / p.clone();
                for j in k..n {
                    let v = work[(k, j)].clone() * f.clone();
                    work[(i, j)] -= v;
                }
            }
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(Mat::identity(n))
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.0
    }
}

/// Change of basis: column `j` of `p` holds the new basis vector `e'_j` in
/// old coordinates, so old coordinates are `p · new` and `pᵀ G p = I` for an
/// orthonormalizing change.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameChange<S> {
    pub p: Mat<S>,
    pub p_inv: Mat<S>,
}

impl<S: Scalar> FrameChange<S> {
    pub fn new(p: Mat<S>, ctx: &Context) -> Result<Self> {
        let p_inv = p
            .inverse(ctx.eps)
            .ok_or_else(|| Error::Validation("frame change is singular".into()))?;
        Ok(Self { p, p_inv })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            p: Mat::identity(n),
            p_inv: Mat::identity(n),
        }
    }

    /// Old coordinates to new coordinates.
    pub fn to_new(&self, v: &[S]) -> Vec<S> {
        self.p_inv.mul_vec(v)
    }

    /// New coordinates to old coordinates.
    pub fn to_old(&self, v: &[S]) -> Vec<S> {
        self.p.mul_vec(v)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FrameChange<S>) -> FrameChange<S> {
        FrameChange {
            p: self.p.mul(&next.p),
            p_inv: next.p_inv.mul(&self.p_inv),
        }
    }
}

/// Express the structure constants in the basis given by the columns of
/// `change.p`.
pub fn change_frame<S: Scalar>(
    spec: &LieAlgebra<S>,
    change: &FrameChange<S>,
    orthonormal: bool,
) -> Result<LieAlgebra<S>> {
    let n = spec.dim();
    if change.p.rows() != n || change.p.cols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: change.p.rows(),
        });
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ei: Vec<S> = (0..n).map(|r| change.p[(r, i)].clone()).collect();
            let ej: Vec<S> = (0..n).map(|r| change.p[(r, j)].clone()).collect();
            let old = bracket(spec, &ei, &ej)?;
            for (k, c) in change.to_new(&old).into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push(((i, j, k), c));
                }
            }
        }
    }
    let mut out = LieAlgebra::from_upper_entries(n, entries, orthonormal)?;
    if change.p == Mat::identity(n) {
        out.family = spec.family;
    }
    Ok(out)
}

/// Re-express `spec` in a frame orthonormal for `gram`, using the Cholesky
/// factor `G = L Lᵀ`: the new frame is given by the columns of `L⁻ᵀ`.
pub fn orthonormalize<S: Scalar>(
    spec: &LieAlgebra<S>,
    gram: &GramMatrix<S>,
    ctx: &Context,
) -> Result<(LieAlgebra<S>, FrameChange<S>)> {
    let g = gram.matrix();
    if g.rows() != spec.dim() {
        return Err(Error::LengthMismatch {
            expected: spec.dim(),
            got: g.rows(),
        });
    }
    let l = g.cholesky(ctx.eps)?;
    let p = l
        .transpose()
        .inverse(ctx.eps)
        .ok_or_else(|| Error::NotPositiveDefinite("singular Cholesky factor".into()))?;
    let change = FrameChange {
        p_inv: l.transpose(),
        p,
    };
    let out = change_frame(spec, &change, true)?;
    Ok((out, change))
}

// ---------------------------------------------------------------------------
// Ingestion record

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramRecord {
    Named(String),
    Matrix(Vec<Vec<String>>),
}

impl Default for GramRecord {
    fn default() -> Self {
        GramRecord::Named("identity".into())
    }
}

/// JSON ingestion record: `{ "dim": n, "brackets": [{"i":1,"j":2,"k":3,"c":"1"}],
/// "gram": "identity" | [[...]] }` with 1-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRecord {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub gram: GramRecord,
}

impl AlgebraRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        crate::record::from_json(text)
    }

    /// Record of an orthonormal algebra (identity gram, `i < j` entries).
    pub fn from_algebra<S: Scalar>(spec: &LieAlgebra<S>) -> Self {
        let brackets = spec
            .nonzero()
            .filter(|((i, j, _), _)| i < j)
            .map(|((i, j, k), c)| BracketEntry {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                c: c.render(),
            })
            .collect();
        Self {
            dim: spec.dim(),
            brackets,
            gram: GramRecord::default(),
        }
    }

    /// Parse the entries and orthonormalize when a non-identity gram is
    /// supplied.
    pub fn build<S: Scalar>(&self, ctx: &Context) -> Result<(LieAlgebra<S>, FrameChange<S>)> {
        let n = self.dim;
        if n == 0 {
            return Err(crate::record::field_error("dim", "dimension must be positive"));
        }
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (idx, b) in self.brackets.iter().enumerate() {
            let path = |f: &str| format!("brackets[{idx}].{f}");
            for (name, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if v == 0 || v > n {
                    return Err(crate::record::field_error(
                        &path(name),
                        &format!("index {v} outside 1..={n}"),
                    ));
                }
            }
            let c: S = parse_scalar(&b.c).map_err(|e| crate::record::field_error(&path("c"), &e.to_string()))?;
            entries.push(((b.i - 1, b.j - 1, b.k - 1), c));
        }
        let raw = match &self.gram {
            GramRecord::Named(name) if name == "identity" => None,
            GramRecord::Named(other) => {
                return Err(crate::record::field_error(
                    "gram",
                    &format!("expected \"identity\" or a matrix, got {other:?}"),
                ))
            }
            GramRecord::Matrix(rows) => Some(rows),
        };
        let spec = LieAlgebra::from_upper_entries(n, entries, raw.is_none())
            .map_err(|e| crate::record::field_error("brackets", &e.to_string()))?;
        let Some(rows) = raw else {
            return Ok((spec, FrameChange::identity(n)));
        };
        if rows.len() != n {
            return Err(crate::record::field_error(
                "gram",
                &format!("expected {n} rows, got {}", rows.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(crate::record::field_error(
                    &format!("gram[{r}]"),
                    &format!("expected {n} entries, got {}", row.len()),
                ));
            }
            let mut out = Vec::with_capacity(n);
            for (c, cell) in row.iter().enumerate() {
                out.push(
                    parse_scalar::<S>(cell)
                        .map_err(|e| crate::record::field_error(&format!("gram[{r}][{c}]"), &e.to_string()))?,
                );
            }
            parsed.push(out);
        }
        let gram = GramMatrix::new(Mat::from_rows(parsed)?, ctx)
            .map_err(|e| crate::record::field_error("gram", &e.to_string()))?;
        orthonormalize(&spec, &gram, ctx)
    }
}
