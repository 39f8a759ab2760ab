use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LottoError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Valuations do not sum to one in strict mode.
    #[error("valuations sum to {sum}, expected 1 within {tol:e}")]
    Normalization { sum: f64, tol: f64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LottoError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LottoError>;

pub(crate) fn invalid(msg: impl Into<String>) -> LottoError {
    LottoError::InvalidArgument(msg.into())
}
