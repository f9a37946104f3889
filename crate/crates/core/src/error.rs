use thiserror::Error;

/// Errors shared across the geometry, vectorization, and inference modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("unsupported homology dimension {0} (only 0 and 1 are computed)")]
    UnsupportedDimension(u32),

    #[error("expansions built from different kernels cannot be combined")]
    IncompatibleExpansion,

    #[error("insufficient data: {0}")]
    InsufficientData(&'static str),

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(&'static str),

    #[error("subsample size {m} exceeds sample size {n}")]
    InvalidSubsampleSize { m: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
