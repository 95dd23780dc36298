use thiserror::Error;

/// Errors raised by the envelope library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined for this parameter regime (typically alpha = 0).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A documented precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant failed. Indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
