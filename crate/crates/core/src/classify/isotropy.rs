//! Isotropy groups of the built-in families.
//!
//! The generators are exact: coordinate swaps, sign flips and the rational
//! rotation with cosine 3/5, embedded in the block shape each family allows.

use crate::algebra::Family;
use crate::algebra::{bracket, LieAlgebra};
use crate::error::Result;
use crate::linalg::Mat;
use crate::scalar::{Context, Scalar};
use crate::symtensor::{act_isotropy, CubicForm, OrthogonalMap};

/// Generators of the isotropy group of a built-in family.
#[derive(Clone, Debug)]
pub struct IsotropyGenerators<S> {
    pub family: Family,
    pub generators: Vec<OrthogonalMap<S>>,
    /// Positive rescalings `r ≠ 1` belong to the group (abelian only).
    pub scaling_allowed: bool,
}

// Generators of O(m): adjacent swaps, one sign flip and one irrational-angle
// rotation. Together they generate a dense subgroup.
fn orthogonal_blocks<S: Scalar>(m: usize) -> Vec<Mat<S>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut flip = Mat::identity(m);
    flip[(0, 0)] = -S::one();
    out.push(flip);
    for i in 0..m.saturating_sub(1) {
        let mut swap = Mat::identity(m);
        swap[(i, i)] = S::zero();
        swap[(i + 1, i + 1)] = S::zero();
        swap[(i, i + 1)] = S::one();
        swap[(i + 1, i)] = S::one();
        out.push(swap);
    }
    if m >= 2 {
        out.push(rotation(m, 0, 1));
    }
    out
}

fn rotation<S: Scalar>(m: usize, i: usize, j: usize) -> Mat<S> {
    let (c, s) = (S::from_ratio(3, 5), S::from_ratio(4, 5));
    let mut r = Mat::identity(m);
    r[(i, i)] = c.clone();
    r[(j, j)] = c;
    r[(i, j)] = -s.clone();
    r[(j, i)] = s;
    r
}

fn embed<S: Scalar>(n: usize, offset: usize, block: &Mat<S>) -> Mat<S> {
    let mut out = Mat::identity(n);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out[(offset + i, offset + j)] = block[(i, j)].clone();
        }
    }
    out
}

impl<S: Scalar> IsotropyGenerators<S> {
    /// The generators that fix each basis vector `e_i`, `i ∈ fixed`.
    ///
    /// On heisenberg_product the forms `w₀p₁` are invariant only under the
    /// `S(O(2)×O(1))` block, i.e. under the generators fixing `e_4, …, e_n`.
    pub fn fixing(&self, fixed: &[usize]) -> Self {
        let keeps = |h: &OrthogonalMap<S>| {
            let m = h.matrix();
            fixed.iter().all(|&i| {
                (0..m.rows()).all(|r| {
                    let want = if r == i { S::one() } else { S::zero() };
                    m[(r, i)] == want
                })
            })
        };
        Self {
            family: self.family,
            generators: self.generators.iter().filter(|h| keeps(h)).cloned().collect(),
            scaling_allowed: false,
        }
    }
}

/// Isotropy generators for `family` in dimension `n`.
///
/// * abelian: `O(n)` together with all positive scalings;
/// * rhn: `diag(1, h₀)` with `h₀ ∈ O(n−1)`;
/// * heisenberg: `diag(A, det A, h₀)` with `A ∈ O(2)`, `h₀ ∈ O(n−3)`.
pub fn isotropy_generators<S: Scalar>(family: Family, n: usize) -> Result<IsotropyGenerators<S>> {
    family.check_dim(n)?;
    let ctx = Context::default();
    let mats: Vec<Mat<S>> = match family {
        Family::Abelian => orthogonal_blocks(n),
        Family::Rhn => orthogonal_blocks(n - 1).iter().map(|b| embed(n, 1, b)).collect(),
        Family::Heisenberg3 | Family::HeisenbergProduct => {
            let mut out = Vec::new();
            out.push(rotation(n, 0, 1));
            let mut flip = Mat::identity(n);
            flip[(0, 0)] = -S::one();
            flip[(2, 2)] = -S::one();
            out.push(flip);
            let mut swap = Mat::identity(n);
            swap[(0, 0)] = S::zero();
            swap[(1, 1)] = S::zero();
            swap[(0, 1)] = S::one();
            swap[(1, 0)] = S::one();
            swap[(2, 2)] = -S::one();
            out.push(swap);
            out.extend(orthogonal_blocks(n - 3).iter().map(|b| embed(n, 3, b)));
            out
        }
    };
    let generators = mats
        .into_iter()
        .map(|m| OrthogonalMap::new(m, &ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(IsotropyGenerators {
        family,
        generators,
        scaling_allowed: family == Family::Abelian,
    })
}

/// `max_ij ‖h[e_i, e_j] − [h e_i, h e_j]‖_max`; zero iff `h` is an automorphism.
pub fn automorphism_defect<S: Scalar>(spec: &LieAlgebra<S>, h: &OrthogonalMap<S>) -> Result<f64> {
    let n = spec.dim();
    let m = h.matrix();
    let col = |i: usize| (0..n).map(|r| m[(r, i)].clone()).collect::<Vec<S>>();
    let unit = |i: usize| {
        (0..n)
            .map(|r| if r == i { S::one() } else { S::zero() })
            .collect::<Vec<S>>()
    };
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let lhs = m.mul_vec(&bracket(spec, &unit(i), &unit(j))?);
            let rhs = bracket(spec, &col(i), &col(j))?;
            for (a, b) in lhs.iter().zip(&rhs) {
                worst = worst.max((a.clone() - b.clone()).abs().to_f64());
            }
        }
    }
    Ok(worst)
}

/// `max_h ‖act_isotropy(1, h, C) − C‖_max` over the generators.
pub fn invariance_defect<S: Scalar>(c: &CubicForm<S>, gens: &IsotropyGenerators<S>) -> Result<f64> {
    let mut worst = 0.0f64;
    for h in &gens.generators {
        worst = worst.max(act_isotropy(&S::one(), h, c)?.max_abs_diff(c));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_builtin;
    use crate::scalar::{rational, Rational};
    use crate::symtensor::{cubic_from_polynomial, PolynomialView};

    type Q = Rational;

    #[test]
    fn generators_are_automorphisms() {
        for (family, dims) in [
            (Family::Abelian, 1..=4),
            (Family::Rhn, 2..=5),
            (Family::HeisenbergProduct, 3..=6),
        ] {
            for n in dims {
                let spec = build_builtin::<Q>(family, n).unwrap();
                let gens = isotropy_generators::<Q>(family, n).unwrap();
                assert!(!gens.generators.is_empty());
                assert_eq!(gens.scaling_allowed, family == Family::Abelian);
                for h in &gens.generators {
                    assert_eq!(automorphism_defect(&spec, h).unwrap(), 0.0, "{family:?} n = {n}");
                }
            }
        }
    }

    #[test]
    fn non_automorphism_detected() {
        let spec = build_builtin::<Q>(Family::Rhn, 3).unwrap();
        let swap = OrthogonalMap::new(
            Mat::from_rows(vec![
                vec![rational(0, 1), rational(1, 1), rational(0, 1)],
                vec![rational(1, 1), rational(0, 1), rational(0, 1)],
                vec![rational(0, 1), rational(0, 1), rational(1, 1)],
            ])
            .unwrap(),
            &Context::default(),
        )
        .unwrap();
        assert!(automorphism_defect(&spec, &swap).unwrap() > 0.0);
    }

    #[test]
    fn invariant_forms() {
        // C^α on rhn; w0·x4 on heisenberg_product(4) is only block invariant.
        let rhn = isotropy_generators::<Q>(Family::Rhn, 4).unwrap();
        let mut view = PolynomialView::new(4).with_term([0, 0, 0], rational(4, 1)).unwrap();
        for i in 1..4 {
            view.add_term([0, i, i], rational(6, 1)).unwrap();
        }
        let c = cubic_from_polynomial(&view, 4).unwrap();
        assert_eq!(invariance_defect(&c, &rhn).unwrap(), 0.0);

        let heis = isotropy_generators::<Q>(Family::HeisenbergProduct, 4).unwrap();
        let mut view = PolynomialView::new(4);
        for a in 0..3 {
            view.add_term([a, a, 3], rational(1, 1)).unwrap();
        }
        let c = cubic_from_polynomial(&view, 4).unwrap();
        assert!(invariance_defect(&c, &heis).unwrap() > 0.0);
        let block = heis.fixing(&[3]);
        assert_eq!(block.generators.len(), 3);
        assert_eq!(invariance_defect(&c, &block).unwrap(), 0.0);

        let mut view = PolynomialView::new(4).with_term([1, 1, 1], rational(1, 1)).unwrap();
        view.add_term([0, 0, 3], rational(1, 1)).unwrap();
        let c = cubic_from_polynomial(&view, 4).unwrap();
        assert!(invariance_defect(&c, &heis).unwrap() > 0.0);
    }
}
