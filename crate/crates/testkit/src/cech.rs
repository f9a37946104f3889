//! Brute-force Čech persistence for small point sets.
//!
//! The full 2-skeleton is built directly: every pair enters at half its
//! length, every triple at its min-enclosing-ball radius. Homology in
//! dimensions 0 and 1 only needs simplices up to dimension 2, so this equals
//! the union-of-balls persistence the alpha complex computes.

use std::collections::BTreeSet;

/// Diagram (finite pairs, zero-persistence dropped) and essential birth radii
/// of the Čech filtration of `points` in dimension `q`.
pub fn cech_persistence(points: &[[f64; 2]], q: u32) -> (Vec<(f64, f64)>, Vec<f64>) {
    assert!(q <= 1);
    // exact-equality dedup, first occurrence kept
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for &p in points {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let n = pts.len();

    #[derive(Clone)]
    struct Simplex {
        value: f64,
        dim: u32,
        verts: Vec<usize>,
    }

    let mut simplices = Vec::new();
    for v in 0..n {
        simplices.push(Simplex { value: 0.0, dim: 0, verts: vec![v] });
    }
    for i in 0..n {
        for j in i + 1..n {
            simplices.push(Simplex { value: half_length(pts[i], pts[j]), dim: 1, verts: vec![i, j] });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let raw = meb_radius(pts[i], pts[j], pts[k]);
                // monotone clamp against the edge values
                let value = raw
                    .max(half_length(pts[i], pts[j]))
                    .max(half_length(pts[i], pts[k]))
                    .max(half_length(pts[j], pts[k]));
                simplices.push(Simplex { value, dim: 2, verts: vec![i, j, k] });
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then(a.dim.cmp(&b.dim))
            .then(a.verts.cmp(&b.verts))
    });

    // positions of faces
    let mut pos_of: std::collections::HashMap<Vec<usize>, usize> = Default::default();
    for (pos, s) in simplices.iter().enumerate() {
        pos_of.insert(s.verts.clone(), pos);
    }

    // naive reduction with set-valued columns
    let mut columns: Vec<BTreeSet<usize>> = simplices
        .iter()
        .map(|s| {
            let mut col = BTreeSet::new();
            if s.dim > 0 {
                for drop in 0..s.verts.len() {
                    let mut face = s.verts.clone();
                    face.remove(drop);
                    col.insert(pos_of[&face]);
                }
            }
            col
        })
        .collect();

    let total = simplices.len();
    let mut owner_of_low = vec![usize::MAX; total];
    let mut pairs = Vec::new();
    for j in 0..total {
        while let Some(&low) = columns[j].iter().next_back() {
            let other = owner_of_low[low];
            if other == usize::MAX {
                owner_of_low[low] = j;
                pairs.push((low, j));
                break;
            }
            let sym: BTreeSet<usize> =
                columns[j].symmetric_difference(&columns[other]).copied().collect();
            columns[j] = sym;
        }
    }

    let mut diagram = Vec::new();
    let mut positive_killed = vec![false; total];
    let mut negatives = vec![false; total];
    for &(i, j) in &pairs {
        positive_killed[i] = true;
        negatives[j] = true;
        if simplices[i].dim == q && simplices[j].value > simplices[i].value {
            diagram.push((simplices[i].value, simplices[j].value));
        }
    }
    let mut essential = Vec::new();
    for (pos, s) in simplices.iter().enumerate() {
        if s.dim == q && !positive_killed[pos] && !negatives[pos] {
            essential.push(s.value);
        }
    }
    (diagram, essential)
}

fn half_length(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    (dx * dx + dy * dy).sqrt() / 2.0
}

/// Min-enclosing-ball radius of a triple: the smallest diametral disk of a
/// side that contains the remaining point, else the circumradius.
fn meb_radius(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let mut best = f64::INFINITY;
    for (p, q, z) in [(a, b, c), (a, c, b), (b, c, a)] {
        let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
        let r_sq = {
            let dx = p[0] - q[0];
            let dy = p[1] - q[1];
            (dx * dx + dy * dy) / 4.0
        };
        let dz = {
            let dx = mid[0] - z[0];
            let dy = mid[1] - z[1];
            dx * dx + dy * dy
        };
        if dz <= r_sq {
            best = best.min(r_sq.sqrt());
        }
    }
    if best.is_finite() {
        return best;
    }
    circumradius(a, b, c)
}

/// Same canonicalization as the main crate: vertices in coordinate order.
fn circumradius(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let mut v = [a, b, c];
    v.sort_by(|p, q| p.partial_cmp(q).unwrap());
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let (d0, e0) = cech_persistence(&[[0.0, 0.0], [2.0, 0.0]], 0);
        assert_eq!(d0, vec![(0.0, 1.0)]);
        assert_eq!(e0, vec![0.0]);
    }

    #[test]
    fn unit_square_cycle() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let (d1, e1) = cech_persistence(&pts, 1);
        assert_eq!(d1.len(), 1);
        assert!((d1[0].0 - 0.5).abs() < 1e-15);
        assert!((d1[0].1 - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        assert!(e1.is_empty());
    }

    #[test]
    fn meb_of_obtuse_triple_is_half_longest_side() {
        let r = meb_radius([0.0, 0.0], [4.0, 0.0], [2.0, 0.5]);
        assert_eq!(r, 2.0);
    }
}
