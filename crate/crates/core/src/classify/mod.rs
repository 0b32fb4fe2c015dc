//! Conjugate-symmetric subspaces, dually flat solutions, the abelian normal
//! form and isotropy groups.

pub mod abelian;
pub mod cs;
pub mod df;
pub mod isotropy;

pub use abelian::{abelian_df_normal_form, canonicalize_v, DiagonalSpectrum};
pub use cs::{cs_subspace, CsBasis};
pub use df::{
    df_check, df_solutions, DfOptions, DfOutcome, DfSolution, EmptinessCertificate, FamilyDescriptor, MAX_NEWTON_DIM,
};
pub use isotropy::{automorphism_defect, invariance_defect, isotropy_generators, IsotropyGenerators};
