//! Subsampled two-sample error-rate estimation.
//!
//! The null threshold for `n * MMD_u^2` is computed once from the aggregated
//! samples; the procedure then repeatedly subsamples `m` diagrams per side
//! (without replacement, so each subsample is an honest i.i.d. `m`-sample of
//! the underlying law) and reports the fraction of `m * MMD_u^2` values
//! exceeding the threshold.

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inference::mmd::{
    mmd_u, mmd_u_indexed, permutation_null_quantile, spectral_null_quantile,
    DEFAULT_SPECTRAL_DRAWS,
};
use crate::rng::{domain, substream};
use crate::vectorization::{diagram_gram, DiagramGram, DiagramKernel, KernelParams};
use crate::geometry::PersistenceDiagram;

/// How the null quantile of the aggregated statistic is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullMethod {
    /// Asymptotic spectral null from the centered Gram eigenvalues.
    Spectral { draws: usize },
    /// Label permutations of the aggregated Gram.
    Permutation { permutations: usize },
}

impl Default for NullMethod {
    fn default() -> Self {
        Self::Spectral { draws: DEFAULT_SPECTRAL_DRAWS }
    }
}

/// Outputs of the two-sample procedure with full provenance.
#[derive(Debug, Clone, Serialize)]
pub struct TwoSampleReport {
    /// `n * MMD_u^2` on the full two samples.
    pub statistic: f64,
    /// Upper-α null quantile the trials are compared against.
    pub threshold: f64,
    pub null_method: NullMethod,
    /// Whether the full-sample statistic exceeds the threshold.
    pub reject: bool,
    /// Fraction of subsample statistics at or below the threshold.
    pub p_hat: f64,
    /// `1 - p_hat`: the rejection rate over the trials.
    pub rejection_rate: f64,
    pub alpha: f64,
    pub n_x: usize,
    pub n_y: usize,
    pub subsample: usize,
    pub trials: usize,
    pub seed: u64,
    pub kernel: KernelParams,
}

/// Runs the full procedure for one diagram kernel.
pub fn error_rate(
    d_samples: &[PersistenceDiagram],
    e_samples: &[PersistenceDiagram],
    kernel: &DiagramKernel,
    alpha: f64,
    subsample: usize,
    trials: usize,
    seed: u64,
    null_method: NullMethod,
) -> Result<TwoSampleReport> {
    let (n_x, n_y) = (d_samples.len(), e_samples.len());
    if n_x < 2 || n_y < 2 {
        return Err(Error::InsufficientData("need at least two diagrams per side"));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }

    let mut all = Vec::with_capacity(n_x + n_y);
    all.extend_from_slice(d_samples);
    all.extend_from_slice(e_samples);
    let gram = diagram_gram(&all, kernel);

    let threshold = match null_method {
        NullMethod::Spectral { draws } => spectral_null_quantile(&gram, alpha, draws, seed)?,
        NullMethod::Permutation { permutations } => {
            permutation_null_quantile(&gram, n_x, n_y, alpha, permutations, seed)?
        }
    };

    let (p_hat, rejection_rate) =
        subsample_rejection_rate(&gram, n_x, n_y, subsample, trials, seed, threshold)?;

    let statistic = n_x as f64 * mmd_u(&gram, n_x, n_y)?;
    Ok(TwoSampleReport {
        statistic,
        threshold,
        null_method,
        reject: statistic > threshold,
        p_hat,
        rejection_rate,
        alpha,
        n_x,
        n_y,
        subsample,
        trials,
        seed,
        kernel: gram.params().clone(),
    })
}

/// The trial loop against an externally supplied threshold. Returns
/// `(p_hat, 1 - p_hat)`.
pub fn subsample_rejection_rate(
    gram: &DiagramGram,
    n_x: usize,
    n_y: usize,
    subsample: usize,
    trials: usize,
    seed: u64,
    threshold: f64,
) -> Result<(f64, f64)> {
    if gram.size() != n_x + n_y {
        return Err(Error::InvalidGram("gram dimension must equal n_x + n_y"));
    }
    if subsample > n_x.min(n_y) {
        return Err(Error::InvalidSubsampleSize { m: subsample, n: n_x.min(n_y) });
    }
    if subsample < 2 {
        return Err(Error::InsufficientData("subsample size must be at least 2"));
    }

    let mut accept = 0usize;
    for trial in 0..trials {
        let mut rng = substream(seed, domain::SUBSAMPLE_TRIAL, trial as u64);
        let mut xs: Vec<usize> = (0..n_x).collect();
        xs.partial_shuffle(&mut rng, subsample);
        let mut ys: Vec<usize> = (n_x..n_x + n_y).collect();
        ys.partial_shuffle(&mut rng, subsample);
        let stat = subsample as f64
            * mmd_u_indexed(gram, &xs[..subsample], &ys[..subsample])?;
        if stat <= threshold {
            accept += 1;
        }
    }
    let p_hat = accept as f64 / trials as f64;
    Ok((p_hat, 1.0 - p_hat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectorization::KernelParams;
    use nalgebra::DMatrix;

    fn toy_gram(n: usize) -> DiagramGram {
        let m = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.3 });
        DiagramGram::from_matrix(m, KernelParams::default())
    }

    #[test]
    fn forced_infinite_thresholds() {
        let gram = toy_gram(12);
        let (p, rate) =
            subsample_rejection_rate(&gram, 6, 6, 4, 50, 1, f64::INFINITY).unwrap();
        assert_eq!((p, rate), (1.0, 0.0));
        let (p, rate) =
            subsample_rejection_rate(&gram, 6, 6, 4, 50, 1, f64::NEG_INFINITY).unwrap();
        assert_eq!((p, rate), (0.0, 1.0));
    }

    #[test]
    fn oversized_subsample_rejected() {
        let gram = toy_gram(8);
        assert!(matches!(
            subsample_rejection_rate(&gram, 4, 4, 5, 10, 1, 0.0),
            Err(Error::InvalidSubsampleSize { m: 5, n: 4 })
        ));
    }

    #[test]
    fn deterministic_given_seed() {
        let gram = toy_gram(16);
        let a = subsample_rejection_rate(&gram, 8, 8, 6, 200, 42, 0.05).unwrap();
        let b = subsample_rejection_rate(&gram, 8, 8, 6, 200, 42, 0.05).unwrap();
        assert_eq!(a, b);
    }
}
