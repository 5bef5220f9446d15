//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Invalid configuration value (bad grid, non-stochastic transition
    /// matrix, zero window, ...).
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Malformed or rejected input data (schema violation, non-positive
    /// price, misaligned dates, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Fewer usable rows than the pipeline requires.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A checkpoint was asked to run against a panel or config it was not
    /// trained for. Never evaluated silently.
    #[error("fingerprint mismatch: {0}")]
    FingerprintMismatch(String),

    /// Protocol misuse of a stateful object (step after done, reset out of
    /// range, ...).
    #[error("protocol error: {0}")]
    Protocol(String),

    /// Training produced a non-finite loss; the update is aborted.
    #[error("non-finite loss at update {update}: {detail}")]
    NonFiniteLoss { update: u64, detail: String },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
