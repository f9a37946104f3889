//! Random planar point sets: perturbed square lattices, the homogeneous
//! Poisson process on the unit square, and the Matérn hard-core thinnings.
//!
//! Generators are pure functions of `(spec, seed)`; batch generation over
//! seeds is embarrassingly parallel.

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::rng::{domain, substream};

/// Per-site noise law of a perturbed lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LatticeNoise {
    /// Uniform on the square box `[-r, r]^2` around each site.
    UniformBox { half_width: f64 },
    /// Isotropic Gaussian with standard deviation `s` per coordinate.
    Gaussian { std_dev: f64 },
}

/// A square lattice `{(i, j) : i, j = 1..=side}` with i.i.d. noise per site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub side: usize,
    pub noise: LatticeNoise,
}

impl LatticeSpec {
    fn validate(&self) -> Result<()> {
        if self.side == 0 {
            return Err(Error::InvalidParameter("lattice side must be >= 1".into()));
        }
        let amp = match self.noise {
            LatticeNoise::UniformBox { half_width } => half_width,
            LatticeNoise::Gaussian { std_dev } => std_dev,
        };
        if !(amp.is_finite() && amp >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise amplitude must be nonnegative and finite, got {amp}"
            )));
        }
        Ok(())
    }
}

/// Draws the perturbed lattice: exactly `side^2` points, site `(i, j)` plus
/// an independent noise vector. Sites are visited in row-major order from a
/// single substream, so the draw is reproducible.
pub fn perturbed_lattice(spec: &LatticeSpec, seed: u64) -> Result<PointSet> {
    spec.validate()?;
    let mut rng = substream(seed, domain::LATTICE, 0);
    let mut points = Vec::with_capacity(spec.side * spec.side);
    for i in 1..=spec.side {
        for j in 1..=spec.side {
            let (dx, dy) = sample_noise(&spec.noise, &mut rng);
            points.push([i as f64 + dx, j as f64 + dy]);
        }
    }
    PointSet::new(points)
}

fn sample_noise(noise: &LatticeNoise, rng: &mut impl Rng) -> (f64, f64) {
    match *noise {
        LatticeNoise::UniformBox { half_width } => {
            if half_width == 0.0 {
                (0.0, 0.0)
            } else {
                (
                    rng.gen_range(-half_width..=half_width),
                    rng.gen_range(-half_width..=half_width),
                )
            }
        }
        LatticeNoise::Gaussian { std_dev } => {
            if std_dev == 0.0 {
                (0.0, 0.0)
            } else {
                let normal = Normal::new(0.0, std_dev).expect("validated std");
                (normal.sample(rng), normal.sample(rng))
            }
        }
    }
}

/// Homogeneous Poisson process on `[0,1]^2`: `N ~ Poisson(intensity)` points
/// with i.i.d. uniform coordinates. `N` may be zero.
pub fn poisson_process(intensity: f64, seed: u64) -> Result<PointSet> {
    if !(intensity.is_finite() && intensity > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "poisson intensity must be positive, got {intensity}"
        )));
    }
    let mut rng = substream(seed, domain::POISSON, 0);
    let n = Poisson::new(intensity).expect("validated intensity").sample(&mut rng) as usize;
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        points.push([x, y]);
    }
    PointSet::new(points)
}

/// Hard-core thinning variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaternVariant {
    /// No thinning: the Poisson process itself.
    None,
    /// Keep a point iff every other point is strictly farther than `R`.
    TypeI,
    /// Keep a point iff its uniform mark strictly exceeds the marks of all
    /// points within distance `R` (inclusive).
    TypeII,
}

/// A Matérn hard-core process: Poisson base intensity, hard-core radius, and
/// thinning variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaternSpec {
    pub intensity: f64,
    pub radius: f64,
    pub variant: MaternVariant,
}

/// Thins a point set in generation order. Marks for Type II are drawn from a
/// dedicated substream in generation-index order, so the result is
/// independent of any parallel evaluation of the distances.
pub fn matern_thin(
    points: &PointSet,
    radius: f64,
    variant: MaternVariant,
    seed: u64,
) -> PointSet {
    assert!(radius >= 0.0 && radius.is_finite(), "hard-core radius must be nonnegative");
    let pts = points.points();
    let n = pts.len();
    let keep: Vec<bool> = match variant {
        MaternVariant::None => vec![true; n],
        MaternVariant::TypeI => (0..n)
            .map(|i| (0..n).all(|j| j == i || dist(pts[i], pts[j]) > radius))
            .collect(),
        MaternVariant::TypeII => {
            let mut rng = substream(seed, domain::MATERN_MARKS, 0);
            let marks: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            (0..n)
                .map(|i| {
                    (0..n).all(|j| {
                        j == i || dist(pts[i], pts[j]) > radius || marks[i] > marks[j]
                    })
                })
                .collect()
        }
    };
    let kept: Vec<[f64; 2]> = pts
        .iter()
        .zip(&keep)
        .filter_map(|(&p, &k)| k.then_some(p))
        .collect();
    PointSet::new(kept).expect("subset of finite points")
}

/// Full pipeline: Poisson base process, then the configured thinning. The
/// base draw and the marks use distinct substreams of the same seed, so Type
/// I / Type II / unthinned results for one seed are coupled pointwise.
pub fn matern_process(spec: &MaternSpec, seed: u64) -> Result<PointSet> {
    if !(spec.radius.is_finite() && spec.radius >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hard-core radius must be nonnegative, got {}",
            spec.radius
        )));
    }
    let base = poisson_process(spec.intensity, seed)?;
    Ok(matern_thin(&base, spec.radius, spec.variant, seed))
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    (dx * dx + dy * dy).sqrt()
}
