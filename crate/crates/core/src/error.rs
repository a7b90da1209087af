use thiserror::Error;

/// Errors raised by the exact engine.
///
/// Domain failures (an input that cannot be factored inside the supported field
/// tower, a non-solvable algebra where a spectral matrix was requested) are kept
/// apart from input failures so that front ends can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower depth {max} exceeded")]
    TowerDepthExceeded { max: usize },
    #[error("elements belong to incompatible field towers")]
    IncompatibleTowers,
    #[error("complex conjugation is undefined on this tower: {0}")]
    ConjugationUndefined(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {got} exceeds the supported limit {max}")]
    DimensionLimitExceeded { got: usize, max: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("tau(x{0}) is not a derivation of the ideal")]
    NotADerivation(usize),
    #[error("tau does not respect the bracket [x{0}, x{1}]")]
    NotAHomomorphism(usize, usize),
    #[error("Jacobi identity fails: {0}")]
    InvalidAlgebra(String),
    #[error("eigenvalues require an irreducible factor of degree {degree} (only quadratic towers are supported)")]
    UnsupportedFieldExtension { degree: usize },
    #[error("characteristic polynomial is not a product of linear factors (residual degree {residual_degree})")]
    NotFullyFactorable { residual_degree: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("arrangement has {got} hyperplanes, limit is {max}")]
    ArrangementTooLarge { got: usize, max: usize },
    #[error("duplicate hyperplane normal")]
    DuplicateHyperplane,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),
    #[error("{line}:{col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("line {line}: {message}")]
    Consistency { line: usize, message: String },
}

impl Error {
    /// True for failures caused by the mathematics of a well-formed input rather
    /// than by the input being malformed.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedFieldExtension { .. }
                | Error::NotFullyFactorable { .. }
                | Error::TowerDepthExceeded { .. }
                | Error::DimensionLimitExceeded { .. }
                | Error::ArrangementTooLarge { .. }
                | Error::ConjugationUndefined(_)
                | Error::InternalInconsistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
