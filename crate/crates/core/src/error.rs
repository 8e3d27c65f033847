use std::fmt;

/// Engine-wide error type.
///
/// The three variants map onto the CLI exit codes: usage errors (1),
/// resource-cap errors (2), internal invariant violations (3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller violated a precondition (bad input, mixed rings, zero module...).
    Usage(String),
    /// A configurable resource cap was hit; the computation was abandoned.
    Resource { what: String, degree: u32 },
    /// An invariant the engine guarantees failed to hold. Always a bug.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Resource { what, degree } => {
                write!(f, "resource cap exceeded: {what} at degree {degree}")
            }
            Error::Internal(msg) => write!(f, "internal invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
