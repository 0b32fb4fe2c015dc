//! Left-invariant statistical structures on Lie groups.
//!
//! A left-invariant statistical structure on a Lie group is an inner product
//! on the Lie algebra together with a symmetric cubic form `C`. This crate
//! computes the associated connections and curvature tensors, decides the
//! conjugate-symmetric, dually-flat, constant-curvature and constant Hessian
//! curvature conditions, and classifies the structures for the abelian
//! algebra, the solvable algebra of real hyperbolic space and the Heisenberg
//! algebra times an abelian factor.
//!
//! Every computation runs over a [`Scalar`] field: exact rationals for the
//! classification results and `f64` where square roots are unavoidable.

// Tensor code indexes several arrays by the same index.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod classify;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod gaussian;
pub mod linalg;
mod record;
pub mod report;
pub mod scalar;
pub mod symtensor;

pub use algebra::{
    bracket, build_builtin, change_frame, jacobi_defect, orthonormalize, AlgebraRecord, Family, FrameChange,
    GramMatrix, LieAlgebra,
};
pub use classify::{
    abelian_df_normal_form, canonicalize_v, cs_subspace, df_check, df_solutions, invariance_defect,
    isotropy_generators, CsBasis, DfOptions, DfOutcome, DfSolution, DiagonalSpectrum, IsotropyGenerators,
};
pub use connection::{levi_civita, statistical_connection, DifferenceTensor};
pub use curvature::{analyze, StructureReport};
pub use error::{Error, Result};
pub use gaussian::{takano_left_invariant_data, verify_takano, GaussianPoint};
pub use linalg::Mat;
pub use report::StructureRecord;
pub use scalar::{parse_rational, rational, Context, Rational, Scalar, DEFAULT_EPS, EPS_ENV_VAR};
pub use symtensor::{
    act_isotropy, cubic_from_polynomial, omega_coefficients, polynomial_from_cubic, total_symmetry_defect, CubicForm,
    CubicRecord, FourTensor, Monomial, OrthogonalMap, PolynomialView, SymmetryClass,
};
