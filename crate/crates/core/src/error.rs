use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeded the cap of {cap}")]
    Resource { what: &'static str, cap: usize },
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("subset has {got} bits but the host semigroup has {expected} elements")]
    HostMismatch { expected: usize, got: usize },
    #[error("word does not factor into (A1+ A2+)+: {0}")]
    Factorization(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// Indicates a bug in this crate, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
