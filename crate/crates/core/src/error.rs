use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An enumeration or window would exceed its configured limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The operation is not defined for the given groups.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two independent computations disagreed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::Error::Invalid(format!($($arg)*)) };
}
pub(crate) use invalid;
