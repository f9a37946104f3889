//! Alpha-complex filtration of a planar point set.
//!
//! Filtration values are ball radii: a simplex is present at radius `a` iff
//! the union of balls of radius `a` realizes it through the nerve of
//! Voronoi-restricted balls. In the plane this reproduces the union-of-balls
//! (Čech) persistent homology exactly.

use std::collections::HashMap;

use crate::error::Result;
use crate::geometry::delaunay::delaunay;
use crate::geometry::point_set::{dist, dist_sq, PointSet};

/// Simplices of dimension ≤ 2 with radius-scale filtration values.
///
/// Vertices carry value 0. An edge carries half its length when its diametral
/// disk is empty of other points (Gabriel), otherwise the minimum over its
/// incident triangle values. A triangle carries its circumradius. Every face
/// value is ≤ every coface value.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    points: Vec<[f64; 2]>,
    edges: Vec<([usize; 2], f64)>,
    triangles: Vec<([usize; 3], f64)>,
}

impl FilteredComplex {
    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edges(&self) -> &[([usize; 2], f64)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[([usize; 3], f64)] {
        &self.triangles
    }
}

/// Circumradius of the triangle `abc`. The vertices are canonicalized by
/// coordinate order first so the result is independent of input ordering.
pub(crate) fn circumradius(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let mut v = [a, b, c];
    v.sort_by(|p, q| p.partial_cmp(q).expect("finite coordinates"));
    let [a, b, c] = v;
    let bx = b[0] - a[0];
    let by = b[1] - a[1];
    let cx = c[0] - a[0];
    let cy = c[1] - a[1];
    let d = 2.0 * (bx * cy - by * cx);
    if d == 0.0 {
        return f64::INFINITY;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    (ux * ux + uy * uy).sqrt()
}

/// Builds the alpha filtration of the deduplicated points of `ps`.
pub fn alpha_filtration(ps: &PointSet) -> Result<FilteredComplex> {
    let tri = delaunay(ps)?;
    let points = tri.points().to_vec();

    let raw_triangle_value: Vec<f64> = tri
        .triangles()
        .iter()
        .map(|&[i, j, k]| circumradius(points[i], points[j], points[k]))
        .collect();

    // edge -> indices of incident triangles
    let mut incident: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (t, &[i, j, k]) in tri.triangles().iter().enumerate() {
        incident.entry([i, j]).or_default().push(t);
        incident.entry([i, k]).or_default().push(t);
        incident.entry([j, k]).or_default().push(t);
    }

    let mut edges = Vec::with_capacity(tri.edges().len());
    for &[i, j] in tri.edges() {
        let half = dist(points[i], points[j]) / 2.0;
        let cofaces = incident.get(&[i, j]).map(Vec::as_slice).unwrap_or(&[]);
        let gabriel = cofaces.iter().all(|&t| {
            let opposite = tri.triangles()[t]
                .iter()
                .copied()
                .find(|&v| v != i && v != j)
                .expect("triangle has a third vertex");
            !inside_diametral_disk(points[i], points[j], points[opposite])
        });
        let value = if gabriel {
            half
        } else {
            cofaces
                .iter()
                .map(|&t| raw_triangle_value[t])
                .fold(f64::INFINITY, f64::min)
        };
        edges.push(([i, j], value));
    }

    // Clamp each triangle to its face values so the filtration stays monotone
    // even when circumradius and half-edge-length agree only up to rounding.
    let edge_value: HashMap<[usize; 2], f64> =
        edges.iter().map(|&(e, v)| (e, v)).collect();
    let triangles = tri
        .triangles()
        .iter()
        .zip(&raw_triangle_value)
        .map(|(&[i, j, k], &raw)| {
            let v = raw
                .max(edge_value[&[i, j]])
                .max(edge_value[&[i, k]])
                .max(edge_value[&[j, k]]);
            ([i, j, k], v)
        })
        .collect();

    Ok(FilteredComplex { points, edges, triangles })
}

/// Whether `z` lies strictly inside the diametral disk of segment `pq`.
/// The empty-disk (Gabriel) test only needs the vertices opposite the edge in
/// its incident Delaunay triangles: if any point intrudes, one of those does.
fn inside_diametral_disk(p: [f64; 2], q: [f64; 2], z: [f64; 2]) -> bool {
    let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
    dist_sq(mid, z) < dist_sq(p, q) / 4.0
}
