use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` and `Usage` are caller mistakes; `NonIntegral` means a closed form
/// that must be an integer on its validity domain produced a fraction, which is
/// an internal invariant violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("integrality violated: {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
