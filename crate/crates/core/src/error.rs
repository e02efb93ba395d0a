use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different variable sets or coefficient fields.
    #[error("context mismatch: {0}")]
    Context(String),
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation would exceed a configured size guard.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Independent specializations of a generic computation could not be reconciled.
    #[error("inconsistent specializations: {0}")]
    Inconsistent(String),
    /// A self-check performed while building a derived object failed.
    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
