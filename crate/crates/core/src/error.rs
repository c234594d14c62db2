use thiserror::Error;

/// Errors raised by the library.
///
/// The variants mirror the failure classes of the command-line tool:
/// bad input (`Domain`, `Shape`, `InvalidSubgroup`), unsupported
/// combinations (`UnsupportedRing`, `Unsupported`) and wiring bugs
/// (`IllDefinedMap`, `Internal`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid subgroup: {axiom}")]
    InvalidSubgroup { axiom: String },

    #[error("map does not preserve relations: {0}")]
    IllDefinedMap(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
