use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants line up with the CLI exit codes: `Usage` maps to 2 and
/// `Integrity` to 3. The remaining variants are usage-level failures as well.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// The two-vertex quadrangulation, which the decomposition leaves to the
    /// base case of the recursion.
    #[error("base case: {0}")]
    BaseCase(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
