use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension out of range for {family}: {constraint} (got n = {n})")]
    DimensionOutOfRange {
        family: &'static str,
        constraint: &'static str,
        n: usize,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("gram matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("frame is not orthonormal; orthonormalize the algebra first")]
    NotOrthonormal,

    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("scaling factor must be positive")]
    NonPositiveScale,

    #[error("wrong symmetry class: expected {expected}, got {got}")]
    WrongSymmetryClass { expected: &'static str, got: &'static str },

    #[error("vectors are linearly dependent (denominator {0:e})")]
    DependentVectors(f64),

    #[error("operation requires exact mode: {0}")]
    ExactModeRequired(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("variance must be positive, got {0}")]
    NonPositiveVariance(f64),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid record at `{path}`: {message}")]
    Record { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Requests the program cannot serve as opposed to malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::ExactModeRequired(_))
    }
}
