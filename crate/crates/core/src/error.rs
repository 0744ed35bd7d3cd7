use thiserror::Error;

/// Errors raised by the library.
///
/// `InvariantViolation` is reserved for failures that would contradict a
/// proven result (the CLI maps it to exit status 1); everything else is a
/// caller-side problem.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subset {0} is not standard")]
    NotStandard(String),

    #[error("subset {0} is not on the boundary")]
    NotBoundary(String),

    #[error("matrix has index {0}, expected 1")]
    IndexNotOne(String),

    #[error("matrix is rank deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("matrix of size {size} exceeds the size cap {cap}")]
    SizeCapExceeded { size: u64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("{theorem} violated: {detail}")]
    InvariantViolation { theorem: String, detail: String },
}

impl Error {
    pub(crate) fn invariant(theorem: &str, detail: impl Into<String>) -> Self {
        Error::InvariantViolation {
            theorem: theorem.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
