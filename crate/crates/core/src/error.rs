use thiserror::Error;

/// Errors raised by the series, Carathéodory and bounds layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed call: mismatched orders, out-of-range indices, bad grids.
    #[error("usage error: {0}")]
    Usage(String),
    /// Mathematically invalid input: constant term not 1, |x| != 1, alpha <= 0, ...
    #[error("domain error: {0}")]
    Domain(String),
    /// A document (p_spec, scalar literal) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
