//! Batch harness chaining point-set generation, persistence, vectorization,
//! and inference. The binary front end lives in `main.rs`; experiments are
//! exposed as library functions so they can be driven from tests.

pub mod config;
pub mod experiments;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] pdstat_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Other(String),
}

impl CliError {
    /// Exit codes: 0 success, 2 invalid config, 3 runtime failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            _ => 3,
        }
    }
}
