use thiserror::Error;

/// Errors raised by presentations, tensors and the decomposition procedures.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text or JSON.
    #[error("parse error: {0}")]
    Parse(String),

    /// A presentation or map failed a structural law (associativity, unit, module laws, ...).
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Operands live over different presentations.
    #[error("space mismatch: {0}")]
    Mismatch(String),

    /// Parameters outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A map does not satisfy the identity the operation requires.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn mismatch(what: &str) -> Self {
        Error::Mismatch(what.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
