#![allow(dead_code)]

use listat::linalg::Mat;
use listat::{rational, Context, CubicForm, Family, LieAlgebra, OrthogonalMap, Rational, Scalar};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rational(p, q))
}

pub fn random_rational(rng: &mut impl Rng) -> Q {
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn cubic_from_seed(n: usize, rng: &mut impl Rng) -> CubicForm<Q> {
    let comps = (0..listat::symtensor::cubic_dim(n))
        .map(|_| random_rational(rng))
        .collect();
    CubicForm::from_components(n, comps).unwrap()
}

pub fn cubic(n: usize) -> impl Strategy<Value = CubicForm<Q>> {
    proptest::collection::vec(small_rational(), listat::symtensor::cubic_dim(n))
        .prop_map(move |c| CubicForm::from_components(n, c).unwrap())
}

/// `ℝ ⋉_A ℝ^{n−1}`: `[e_1, e_i] = Σ_k A_{ki} e_k`. Every matrix `A` gives a
/// Lie algebra, so this samples non-unimodular, nilpotent and abelian cases.
pub fn almost_abelian(n: usize, a: &[Q]) -> LieAlgebra<Q> {
    let m = n - 1;
    let mut entries = Vec::new();
    for i in 0..m {
        for k in 0..m {
            let v = a[k * m + i].clone();
            if v != rational(0, 1) {
                entries.push(((0, i + 1, k + 1), v));
            }
        }
    }
    LieAlgebra::from_upper_entries(n, entries, true).unwrap()
}

pub fn lie_algebra(max_n: usize) -> impl Strategy<Value = LieAlgebra<Q>> {
    (2..=max_n).prop_flat_map(|n| {
        prop_oneof![
            proptest::collection::vec(small_rational(), (n - 1) * (n - 1)).prop_map(move |a| almost_abelian(n, &a)),
            Just(listat::build_builtin(Family::Rhn, n).unwrap()),
            Just(listat::build_builtin(Family::Abelian, n).unwrap()),
        ]
    })
}

pub fn algebra_and_cubic(max_n: usize) -> impl Strategy<Value = (LieAlgebra<Q>, CubicForm<Q>)> {
    lie_algebra(max_n).prop_flat_map(|spec| {
        let n = spec.dim();
        (Just(spec), cubic(n))
    })
}

/// Product of Pythagorean rotations, swaps and sign flips in random planes:
/// an exactly orthogonal rational matrix.
pub fn rational_orthogonal(n: usize, rng: &mut impl Rng) -> OrthogonalMap<Q> {
    let mut m = Mat::<Q>::identity(n);
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut g = Mat::<Q>::identity(n);
        if i == j {
            g[(i, i)] = rational(-1, 1);
        } else {
            let (c, s, h) = [(3, 4, 5), (5, 12, 13), (8, 15, 17)][rng.gen_range(0..3)];
            let (c, s) = (rational(c, h), rational(s, h));
            g[(i, i)] = c.clone();
            g[(j, j)] = c;
            g[(i, j)] = -s.clone();
            g[(j, i)] = s;
        }
        m = m.mul(&g);
    }
    OrthogonalMap::new(m, &Context::default()).unwrap()
}

/// Orthogonal factor of the QR decomposition of a random Gaussian-like matrix.
pub fn float_orthogonal(n: usize, rng: &mut impl Rng) -> OrthogonalMap<f64> {
    let a = nalgebra::DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = a.qr().q();
    let m = Mat::from_fn(n, n, |i, j| q[(i, j)]);
    OrthogonalMap::new(m, &Context::default()).unwrap()
}

pub fn to_f64_map(h: &OrthogonalMap<Q>) -> OrthogonalMap<f64> {
    let m = h.matrix();
    OrthogonalMap::new(
        Mat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64()),
        &Context::default(),
    )
    .unwrap()
}

/// Random Lie algebra of dimension `2..=max_n` drawn from the same mixture as
/// [`lie_algebra`].
pub fn random_algebra(max_n: usize, rng: &mut impl Rng) -> LieAlgebra<Q> {
    let n = rng.gen_range(2..=max_n);
    match rng.gen_range(0..4) {
        0 => listat::build_builtin(Family::Rhn, n).unwrap(),
        1 => listat::build_builtin(Family::Abelian, n).unwrap(),
        _ => {
            let a: Vec<Q> = (0..(n - 1) * (n - 1)).map(|_| random_rational(rng)).collect();
            almost_abelian(n, &a)
        }
    }
}
