use thiserror::Error;

/// Failures raised by the library.
///
/// `Internal` is reserved for steps that the structure theory guarantees to
/// succeed; hitting it means a bug, not bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group scheme is not commutative")]
    NotCommutative,
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
