use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Delaunay triangulation of a deduplicated planar point set.
///
/// For fully collinear inputs the triangulation degenerates to the edge path
/// connecting consecutive points along the line (no triangles).
#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Vec<[f64; 2]>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    /// Undirected edges as index pairs `i < j`, lexicographically sorted.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Triangles as sorted index triples, lexicographically sorted.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }
}

/// Triangulates the deduplicated points of `ps`.
pub fn delaunay(ps: &PointSet) -> Result<Triangulation> {
    let points = ps.deduplicated();
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.len() == 1 {
        return Ok(Triangulation { points, edges: vec![], triangles: vec![] });
    }
    if points.len() == 2 {
        return Ok(Triangulation { points, edges: vec![[0, 1]], triangles: vec![] });
    }

    let input: Vec<delaunator::Point> =
        points.iter().map(|p| delaunator::Point { x: p[0], y: p[1] }).collect();
    let tri = delaunator::triangulate(&input);

    if tri.triangles.is_empty() {
        // All points collinear: connect consecutive points along the line.
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .partial_cmp(&points[b])
                .expect("finite coordinates")
        });
        let mut edges: Vec<[usize; 2]> =
            order.windows(2).map(|w| sorted_pair(w[0], w[1])).collect();
        edges.sort_unstable();
        return Ok(Triangulation { points, edges, triangles: vec![] });
    }

    let mut triangles = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for t in tri.triangles.chunks_exact(3) {
        let mut tr = [t[0], t[1], t[2]];
        tr.sort_unstable();
        edges.insert(sorted_pair(tr[0], tr[1]));
        edges.insert(sorted_pair(tr[0], tr[2]));
        edges.insert(sorted_pair(tr[1], tr[2]));
        triangles.insert(tr);
    }
    Ok(Triangulation {
        points,
        edges: edges.into_iter().collect(),
        triangles: triangles.into_iter().collect(),
    })
}

fn sorted_pair(a: usize, b: usize) -> [usize; 2] {
    if a < b { [a, b] } else { [b, a] }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(pts: &[[f64; 2]]) -> PointSet {
        PointSet::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(delaunay(&ps(&[])), Err(Error::EmptyInput)));
    }

    #[test]
    fn triangle_of_three_points() {
        let t = delaunay(&ps(&[[0.0, 0.0], [1.0, 0.0], [0.3, 0.9]])).unwrap();
        assert_eq!(t.triangles().len(), 1);
        assert_eq!(t.edges().len(), 3);
    }

    #[test]
    fn unit_square_has_two_triangles_and_five_edges() {
        let t = delaunay(&ps(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert_eq!(t.edges().len(), 5);
    }

    #[test]
    fn collinear_points_give_edge_path() {
        let t = delaunay(&ps(&[[2.0, 0.0], [0.0, 0.0], [1.0, 0.0]])).unwrap();
        assert_eq!(t.triangles().len(), 0);
        assert_eq!(t.edges(), &[[0, 2], [1, 2]]);
    }

    #[test]
    fn duplicates_are_merged_before_triangulation() {
        let t = delaunay(&ps(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])).unwrap();
        assert_eq!(t.points().len(), 2);
        assert_eq!(t.edges(), &[[0, 1]]);
    }
}
