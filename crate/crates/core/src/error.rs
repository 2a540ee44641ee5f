//! Crate-wide error type and result alias.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Shape mismatches, bad parameters, malformed requests.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Degenerate or inconsistent scene geometry.
    #[error("invalid scene: {0}")]
    InvalidScene(String),

    /// Non-finite values produced during computation.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// An integrator exceeded its step budget or step-size floor.
    #[error("integration diverged: {0}")]
    Divergence(String),

    /// Configuration files that parse but describe an invalid run.
    #[error("config error: {0}")]
    Config(String),

    /// Binary file formats (datasets, checkpoints) that fail validation.
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
