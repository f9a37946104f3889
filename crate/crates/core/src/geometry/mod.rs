//! Exact ball-model persistence of planar point sets: Delaunay triangulation,
//! alpha filtration, boundary-matrix reduction, and the distances appearing
//! in the stability theorems.
//!
//! All operations are pure functions of their inputs; every value is
//! immutable after construction and safe to share across threads.

mod alpha;
mod bottleneck;
mod delaunay;
mod persistence;
mod point_set;

pub use alpha::{alpha_filtration, FilteredComplex};
pub use bottleneck::bottleneck_distance;
pub use delaunay::{delaunay, Triangulation};
pub use persistence::{persistence, EssentialClasses, PersistenceDiagram, PersistencePair};
pub use point_set::{hausdorff_distance, PointSet};

use crate::error::Result;

/// Convenience pipeline: alpha filtration followed by dimension-`q`
/// persistence.
pub fn alpha_persistence(
    points: &PointSet,
    q: u32,
) -> Result<(PersistenceDiagram, EssentialClasses)> {
    persistence(&alpha_filtration(points)?, q)
}
