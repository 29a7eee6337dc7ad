use thiserror::Error;

/// Errors raised by the toolkit. Every variant names the operation that
/// produced it so failures deep inside a pipeline stay attributable.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("{op}: invalid input: {msg}")]
    Input { op: &'static str, msg: String },
    /// A documented precondition of the operation does not hold.
    #[error("{op}: contract violation: {msg}")]
    Contract { op: &'static str, msg: String },
}

impl Error {
    pub fn input(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Input { op, msg: msg.into() }
    }

    pub fn contract(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Contract { op, msg: msg.into() }
    }

    /// Name of the operation that raised the error.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Input { op, .. } | Error::Contract { op, .. } => op,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
