//! Bootstrap uniform confidence band for the expectation of the PWK vector.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::PersistenceDiagram;
use crate::rng::{domain, substream};
use crate::vectorization::{pwk_vector, KernelSpec, WeightSpec};

/// Finite ordered evaluation grid: the computable stand-in for the bounded
/// index set over which the band is uniform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationGrid {
    points: Vec<[f64; 2]>,
}

impl EvaluationGrid {
    pub fn new(points: Vec<[f64; 2]>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in &points {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::InvalidParameter("non-finite grid point".into()));
            }
        }
        Ok(Self { points })
    }

    /// The vertical index set `{(x1, x2 + r(0.1 i - 1))}` for `i = s..=t`
    /// used by the experiments: 21 points spanning `x2 - r ..= x2 + r` when
    /// `s = 0, t = 20`.
    pub fn vertical_line(center: [f64; 2], radius: f64, s: usize, t: usize) -> Result<Self> {
        if s > t {
            return Err(Error::InvalidParameter(format!(
                "empty index range {s}..={t}"
            )));
        }
        let points = (s..=t)
            .map(|i| [center[0], center[1] + radius * (0.1 * i as f64 - 1.0)])
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A uniform confidence band: per-grid-point centers with one half-width
/// shared by every grid point.
#[derive(Debug, Clone, Serialize)]
pub struct ConfidenceBand {
    grid: EvaluationGrid,
    center: Vec<f64>,
    half_width: f64,
    alpha: f64,
    replicates: usize,
    seed: u64,
}

impl ConfidenceBand {
    pub fn grid(&self) -> &EvaluationGrid {
        &self.grid
    }

    /// Empirical mean of the PWK vectors at each grid point.
    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn lower(&self, i: usize) -> f64 {
        self.center[i] - self.half_width
    }

    pub fn upper(&self, i: usize) -> f64 {
        self.center[i] + self.half_width
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn replicates(&self) -> usize {
        self.replicates
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Whether the band contains `value` at grid index `i`.
    pub fn covers(&self, i: usize, value: f64) -> bool {
        self.lower(i) <= value && value <= self.upper(i)
    }

    /// Whether this band and `other` are disjoint at grid index `i`.
    pub fn disjoint_at(&self, other: &Self, i: usize) -> bool {
        self.upper(i) < other.lower(i) || other.upper(i) < self.lower(i)
    }
}

/// Empirical upper-α quantile convention used throughout:
/// `inf { c : (#values <= c) / n >= 1 - alpha }`.
pub(crate) fn upper_quantile(values: &mut [f64], alpha: f64) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics"));
    let n = values.len();
    let k = ((n as f64) * (1.0 - alpha)).ceil() as usize;
    values[k.clamp(1, n) - 1]
}

/// Bootstrap band for the expectation of the PWK vector over `grid`.
///
/// For each of `replicates` bootstrap rounds, `n` diagrams are resampled with
/// replacement, and the sup over the grid of `sqrt(n) |mean* - mean|` is
/// recorded; the band half-width is the empirical upper-α quantile of those
/// sups divided by `sqrt(n)`. Deterministic given the seed: replicate `l`
/// draws from its own substream.
pub fn bootstrap_band(
    diagrams: &[PersistenceDiagram],
    kernel: &KernelSpec,
    weight: &WeightSpec,
    grid: &EvaluationGrid,
    alpha: f64,
    replicates: usize,
    seed: u64,
) -> Result<ConfidenceBand> {
    let n = diagrams.len();
    if n == 0 {
        return Err(Error::InsufficientData("bootstrap band needs samples"));
    }
    if replicates == 0 {
        return Err(Error::InvalidParameter("replicates must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must be in (0,1), got {alpha}")));
    }

    let g = grid.len();
    // evals[i][z]: V(D_i)(z)
    let evals: Vec<Vec<f64>> = diagrams
        .iter()
        .map(|d| {
            let v = pwk_vector(d, kernel, weight);
            grid.points().iter().map(|&z| v.evaluate(z)).collect()
        })
        .collect();

    let inv_n = 1.0 / n as f64;
    let mut center = vec![0.0; g];
    for row in &evals {
        for (c, &v) in center.iter_mut().zip(row) {
            *c += v;
        }
    }
    for c in &mut center {
        *c *= inv_n;
    }

    let sqrt_n = (n as f64).sqrt();
    let mut sups: Vec<f64> = (0..replicates)
        .map(|replicate| {
            let mut rng = substream(seed, domain::BOOTSTRAP_BAND, replicate as u64);
            let mut resampled = vec![0.0; g];
            for _ in 0..n {
                let pick = rng.gen_range(0..n);
                for (acc, &v) in resampled.iter_mut().zip(&evals[pick]) {
                    *acc += v;
                }
            }
            resampled
                .iter()
                .zip(&center)
                .map(|(&s, &c)| sqrt_n * (s * inv_n - c).abs())
                .fold(0.0, f64::max)
        })
        .collect();

    let xi = upper_quantile(&mut sups, alpha);
    Ok(ConfidenceBand {
        grid: grid.clone(),
        center,
        half_width: xi / sqrt_n,
        alpha,
        replicates,
        seed,
    })
}
