use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller supplied data that violates a documented precondition
    /// (non-prime p, non-integral polynomial, multiple factors, ...).
    InvalidInput(String),
    /// A polynomial offered as a key for a valuation is not one.
    NotAKey(String),
    /// The input is mathematically meaningful but outside the supported
    /// fragment (e.g. residual factorization shapes we do not handle).
    Unsupported(String),
    /// A valuation set misses an element required for tree algorithms
    /// (infimum closure / predecessor closure); names the missing point.
    ClosureViolation { missing: String },
    /// A discoid query could not be answered because the approximation of a
    /// branch does not yet separate the candidates.
    AmbiguousBranch(String),
    /// Regularity verification failed on a constructed model.
    VerifyFailed(String),
    /// An internal invariant broke; always a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::NotAKey(m) => write!(f, "not a key polynomial: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported input: {m}"),
            Error::ClosureViolation { missing } => {
                write!(f, "valuation set is not closed: missing {missing}")
            }
            Error::AmbiguousBranch(m) => write!(f, "ambiguous branch: {m}"),
            Error::VerifyFailed(m) => write!(f, "verification failed: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand constructors, used pervasively.
impl Error {
    pub fn invalid(m: impl Into<String>) -> Self {
        Error::InvalidInput(m.into())
    }
    pub fn internal(m: impl Into<String>) -> Self {
        Error::Internal(m.into())
    }
    pub fn unsupported(m: impl Into<String>) -> Self {
        Error::Unsupported(m.into())
    }
}
