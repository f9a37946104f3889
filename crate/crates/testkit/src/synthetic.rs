//! Synthetic inputs for property suites and Monte-Carlo checks: random point
//! sets and a fixed family of synthetic diagram distributions (diagrams drawn
//! directly, bypassing geometry, for the statistical suites).

use pdstat_core::rng::{domain, substream};
use pdstat_core::{PersistenceDiagram, PersistencePair, PointSet};
use rand::Rng;

/// Uniform random point set in `[0, scale]^2`.
pub fn random_point_set(count: usize, scale: f64, seed: u64) -> PointSet {
    let mut rng = substream(seed, domain::TEST, 1);
    let points = (0..count)
        .map(|_| [rng.gen::<f64>() * scale, rng.gen::<f64>() * scale])
        .collect();
    PointSet::new(points).unwrap()
}

/// Random diagram with `count` points: births uniform in `[0, 1]`,
/// persistences uniform in `(0, max_persistence]`.
pub fn random_diagram(count: usize, max_persistence: f64, seed: u64) -> PersistenceDiagram {
    let mut rng = substream(seed, domain::TEST, 2);
    let pairs = (0..count)
        .map(|_| {
            let birth = rng.gen::<f64>();
            let pers = rng.gen::<f64>() * max_persistence;
            PersistencePair { birth, death: birth + pers.max(1e-9) }
        })
        .collect();
    PersistenceDiagram::new(1, pairs).unwrap()
}

/// A simple parametric law over diagrams: point count uniform in
/// `min_points..=max_points`, births uniform in `[birth_lo, birth_hi]`,
/// persistences uniform in `[pers_lo, pers_hi]`.
#[derive(Debug, Clone, Copy)]
pub struct DiagramLaw {
    pub min_points: usize,
    pub max_points: usize,
    pub birth_lo: f64,
    pub birth_hi: f64,
    pub pers_lo: f64,
    pub pers_hi: f64,
}

impl Default for DiagramLaw {
    fn default() -> Self {
        Self {
            min_points: 1,
            max_points: 4,
            birth_lo: 0.0,
            birth_hi: 1.0,
            pers_lo: 0.2,
            pers_hi: 1.0,
        }
    }
}

/// Draws one diagram of the law; each `(seed, index)` pair is an independent
/// sample.
pub fn synthetic_diagram(law: &DiagramLaw, seed: u64, index: u64) -> PersistenceDiagram {
    let mut rng = substream(seed, domain::TEST, index);
    let count = rng.gen_range(law.min_points..=law.max_points);
    let pairs = (0..count)
        .map(|_| {
            let birth = rng.gen_range(law.birth_lo..=law.birth_hi);
            let pers = rng.gen_range(law.pers_lo..=law.pers_hi);
            PersistencePair { birth, death: birth + pers }
        })
        .collect();
    PersistenceDiagram::new(1, pairs).unwrap()
}
