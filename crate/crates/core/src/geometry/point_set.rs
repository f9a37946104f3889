use crate::error::{Error, Result};

/// A finite planar point set. Duplicate points are permitted and preserved
/// (generation order matters for the Matérn thinnings); they are merged only
/// when a triangulation is built.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<[f64; 2]>,
}

impl PointSet {
    /// Builds a point set, rejecting non-finite coordinates.
    pub fn new(points: Vec<[f64; 2]>) -> Result<Self> {
        for p in &points {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite coordinate ({}, {})",
                    p[0], p[1]
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact-equality deduplication, keeping first occurrences in order.
    /// Near-duplicates are kept: no epsilon snapping.
    pub fn deduplicated(&self) -> Vec<[f64; 2]> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            // normalize -0.0 so the bit-level key matches == semantics
            let key = [canonical_bits(p[0]), canonical_bits(p[1])];
            if seen.insert(key) {
                out.push(p);
            }
        }
        out
    }
}

fn canonical_bits(v: f64) -> u64 {
    if v == 0.0 { 0.0f64.to_bits() } else { v.to_bits() }
}

pub(crate) fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    (dx * dx + dy * dy).sqrt()
}

pub(crate) fn dist_sq(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    dx * dx + dy * dy
}

/// Hausdorff distance between two nonempty point sets under the Euclidean
/// metric: the larger of the two directed sup-inf distances.
pub fn hausdorff_distance(x: &PointSet, y: &PointSet) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let directed = |a: &[[f64; 2]], b: &[[f64; 2]]| -> f64 {
        a.iter()
            .map(|&p| b.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(directed(x.points(), y.points()).max(directed(y.points(), x.points())))
}
