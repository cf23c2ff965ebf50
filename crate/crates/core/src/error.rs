use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into three classes (see [`ErrorKind`]): malformed input,
/// a failed mathematical precondition, and internal invariant breaches that
/// indicate a bug rather than bad data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("unknown hyperplane id `{0}`")]
    UnknownId(String),
    #[error("duplicate hyperplane: {0}")]
    DuplicateHyperplane(String),
    #[error("hyperplane `{0}` of the source arrangement is missing from the target")]
    NotSubarrangement(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("system is not integrable ({0} violated relation(s))")]
    NotIntegrable(usize),
    #[error("subspace is not invariant under {generator}: basis column {column} leaves it")]
    InvarianceViolation { generator: String, column: usize },
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch(_)
            | Error::InvalidInput(_)
            | Error::ZeroNormal
            | Error::UnknownId(_)
            | Error::DuplicateHyperplane(_)
            | Error::IndexOutOfRange(_)
            | Error::CapExceeded(_) => ErrorKind::Input,
            Error::NotSubarrangement(_) | Error::Precondition(_) | Error::NotIntegrable(_) => {
                ErrorKind::Precondition
            }
            Error::InvarianceViolation { .. } | Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
