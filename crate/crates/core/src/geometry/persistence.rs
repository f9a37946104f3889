//! Persistent homology of an alpha filtration by boundary-matrix reduction
//! over Z/2.

use crate::error::{Error, Result};
use crate::geometry::FilteredComplex;

/// A finite birth-death pair, `birth <= death`, both in radius units.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// The pair as a point of the plane, for kernels and weights.
    pub fn as_point(&self) -> [f64; 2] {
        [self.birth, self.death]
    }
}

/// A persistence diagram in one homology dimension: a multiset of finite
/// birth-death pairs. Zero-persistence pairs are dropped at construction
/// (every weight function vanishes on the diagonal) and essential classes are
/// reported separately, so downstream statistics never see either.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    dimension: u32,
    pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    /// Builds a diagram, rejecting pairs with `death < birth` or non-finite
    /// entries and dropping zero-persistence pairs.
    pub fn new(dimension: u32, pairs: Vec<PersistencePair>) -> Result<Self> {
        for p in &pairs {
            if !p.birth.is_finite() || !p.death.is_finite() || p.death < p.birth {
                return Err(Error::InvalidParameter(format!(
                    "invalid persistence pair ({}, {})",
                    p.birth, p.death
                )));
            }
        }
        let pairs = pairs.into_iter().filter(|p| p.death > p.birth).collect();
        Ok(Self { dimension, pairs })
    }

    pub fn empty(dimension: u32) -> Self {
        Self { dimension, pairs: vec![] }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Birth radii of classes that never die (for point sets in the plane: the
/// one dimension-0 class per connected component of the final complex).
#[derive(Debug, Clone, PartialEq)]
pub struct EssentialClasses {
    births: Vec<f64>,
}

impl EssentialClasses {
    pub fn births(&self) -> &[f64] {
        &self.births
    }
}

/// Computes the dimension-`q` persistence diagram of a filtered complex,
/// together with the essential classes of that dimension.
pub fn persistence(
    complex: &FilteredComplex,
    q: u32,
) -> Result<(PersistenceDiagram, EssentialClasses)> {
    if q > 1 {
        return Err(Error::UnsupportedDimension(q));
    }

    // Flatten to one simplex list sorted by (value, dim, vertex tuple); faces
    // precede cofaces because values are monotone and dim breaks ties.
    struct Simplex {
        value: f64,
        dim: u32,
        verts: [usize; 3], // padded with usize::MAX for lower dims
    }
    let n_vert = complex.vertex_count();
    let mut simplices: Vec<Simplex> = Vec::with_capacity(
        n_vert + complex.edges().len() + complex.triangles().len(),
    );
    for v in 0..n_vert {
        simplices.push(Simplex { value: 0.0, dim: 0, verts: [v, usize::MAX, usize::MAX] });
    }
    for &([i, j], value) in complex.edges() {
        simplices.push(Simplex { value, dim: 1, verts: [i, j, usize::MAX] });
    }
    for &([i, j, k], value) in complex.triangles() {
        simplices.push(Simplex { value, dim: 2, verts: [i, j, k] });
    }
    simplices.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .expect("finite filtration values")
            .then(a.dim.cmp(&b.dim))
            .then(a.verts.cmp(&b.verts))
    });

    // position of each vertex / edge in the sorted order
    let mut vertex_pos = vec![0usize; n_vert];
    let mut edge_pos = std::collections::HashMap::new();
    for (pos, s) in simplices.iter().enumerate() {
        match s.dim {
            0 => vertex_pos[s.verts[0]] = pos,
            1 => {
                edge_pos.insert([s.verts[0], s.verts[1]], pos);
            }
            _ => {}
        }
    }

    // boundary columns (sorted row indices)
    let columns: Vec<Vec<usize>> = simplices
        .iter()
        .map(|s| match s.dim {
            0 => vec![],
            1 => {
                let mut c = vec![vertex_pos[s.verts[0]], vertex_pos[s.verts[1]]];
                c.sort_unstable();
                c
            }
            _ => {
                let [i, j, k] = s.verts;
                let mut c = vec![edge_pos[&[i, j]], edge_pos[&[i, k]], edge_pos[&[j, k]]];
                c.sort_unstable();
                c
            }
        })
        .collect();

    let pairs_idx = reduce(columns);

    let mut diagram_pairs = Vec::new();
    let mut killed = vec![false; simplices.len()];
    for &(i, j) in &pairs_idx {
        killed[i] = true;
        if simplices[i].dim == q {
            diagram_pairs.push(PersistencePair {
                birth: simplices[i].value,
                death: simplices[j].value,
            });
        }
    }
    let negatives: std::collections::HashSet<usize> =
        pairs_idx.iter().map(|&(_, j)| j).collect();
    let mut essential = Vec::new();
    for (pos, s) in simplices.iter().enumerate() {
        if s.dim == q && !killed[pos] && !negatives.contains(&pos) {
            essential.push(s.value);
        }
    }

    Ok((
        PersistenceDiagram::new(q, diagram_pairs)?,
        EssentialClasses { births: essential },
    ))
}

/// Standard left-to-right column reduction over Z/2; returns (birth, death)
/// index pairs.
fn reduce(mut columns: Vec<Vec<usize>>) -> Vec<(usize, usize)> {
    let n = columns.len();
    let mut low_of = vec![usize::MAX; n]; // row -> column that has this low
    let mut pairs = Vec::new();
    for j in 0..n {
        loop {
            let Some(&low) = columns[j].last() else { break };
            let other = low_of[low];
            if other == usize::MAX {
                low_of[low] = j;
                pairs.push((low, j));
                break;
            }
            let merged = xor_sorted(&columns[j], &columns[other]);
            columns[j] = merged;
        }
    }
    pairs
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{alpha_filtration, PointSet};

    fn diagram(pts: &[[f64; 2]], q: u32) -> (PersistenceDiagram, EssentialClasses) {
        let ps = PointSet::new(pts.to_vec()).unwrap();
        persistence(&alpha_filtration(&ps).unwrap(), q).unwrap()
    }

    #[test]
    fn two_points_merge_once() {
        let (d, e) = diagram(&[[0.0, 0.0], [3.0, 0.0]], 0);
        assert_eq!(d.pairs(), &[PersistencePair { birth: 0.0, death: 1.5 }]);
        assert_eq!(e.births(), &[0.0]);
    }

    #[test]
    fn unit_square_ring() {
        let (d, e) = diagram(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], 1);
        assert_eq!(d.len(), 1);
        assert!((d.pairs()[0].birth - 0.5).abs() < 1e-15);
        assert!((d.pairs()[0].death - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        assert!(e.births().is_empty());
    }

    #[test]
    fn single_point_has_no_cycles() {
        let (d, _) = diagram(&[[0.0, 0.0]], 1);
        assert!(d.is_empty());
        let (d0, e0) = diagram(&[[0.0, 0.0]], 0);
        assert!(d0.is_empty());
        assert_eq!(e0.births(), &[0.0]);
    }

    #[test]
    fn unsupported_dimension() {
        let ps = PointSet::new(vec![[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let fc = alpha_filtration(&ps).unwrap();
        assert!(matches!(persistence(&fc, 2), Err(Error::UnsupportedDimension(2))));
    }

    #[test]
    fn diagram_constructor_validates() {
        assert!(PersistenceDiagram::new(0, vec![PersistencePair { birth: 1.0, death: 0.5 }])
            .is_err());
        let d = PersistenceDiagram::new(
            1,
            vec![
                PersistencePair { birth: 1.0, death: 1.0 },
                PersistencePair { birth: 0.0, death: 2.0 },
            ],
        )
        .unwrap();
        assert_eq!(d.len(), 1, "zero-persistence pair dropped");
    }
}
