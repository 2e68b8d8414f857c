use thiserror::Error;

/// Errors produced by the combinatorics engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: a partition, monomial or parameter that fails validation.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A parameter outside the window an operation is defined on.
    #[error("out of range: {0}")]
    Range(String),

    /// The operation is only defined for degree-two sets.
    #[error("unsupported degree {0}: operation requires degree 2")]
    UnsupportedDegree(u32),

    /// A configured memory or size cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// A computation could not reach a verified answer within its caps.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
