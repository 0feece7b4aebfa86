use std::io;

use thiserror::Error;

use crate::engine::Phase;

pub type Result<T, E = UfsError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum UfsError {
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    /// A shuffle loop failed to drain within the configured cap. Valid inputs
    /// converge far below the default cap, so this indicates an engine bug.
    #[error("{phase} did not converge within {limit} rounds")]
    RoundLimitExceeded { phase: Phase, limit: usize },

    #[error("pointer jumping found no fixpoint after {sweeps} sweeps (cyclic parent links)")]
    CycleDetected { sweeps: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node id `{token}` does not fit in 64 bits")]
    Overflow { line: usize, token: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
