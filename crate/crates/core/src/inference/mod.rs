//! Statistical procedures on collections of diagrams: the bootstrap uniform
//! confidence band for the PWK expectation, the unbiased kernel two-sample
//! statistic with spectral and permutation nulls, and the subsampled
//! error-rate loop.
//!
//! Bootstrap replicates, permutations, Monte-Carlo draws, and trials each
//! draw from their own seeded substream, so any execution order yields
//! identical outputs.

mod band;
mod error_rate;
mod mmd;

pub use band::{bootstrap_band, ConfidenceBand, EvaluationGrid};
pub use error_rate::{error_rate, subsample_rejection_rate, NullMethod, TwoSampleReport};
pub use mmd::{
    mmd_u, permutation_null_quantile, spectral_null_quantile, DEFAULT_SPECTRAL_DRAWS,
};
