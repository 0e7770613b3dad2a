use thiserror::Error;

/// Errors raised by the library. Usage errors come from bad inputs; `Invariant`
/// means an internal consistency check failed and indicates a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(crate::polyring::Basis, crate::polyring::Basis),
    #[error("insufficient truncation order: need input order {required}, have {available}")]
    InsufficientOrder { required: i64, available: i64 },
    #[error("degree {degree} exceeds the truncation cutoff {cutoff}")]
    CutoffOverflow { degree: i64, cutoff: i64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
