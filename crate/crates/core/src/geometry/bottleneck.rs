//! Bottleneck distance between persistence diagrams.
//!
//! The optimum over multi-bijections (diagonal matches allowed) of the max
//! ∞-norm displacement always lies in the finite set of pairwise ∞-distances
//! and diagonal gaps, so the distance is found exactly by binary-searching
//! that candidate set for the smallest cost at which a perfect matching
//! exists.

use crate::geometry::PersistenceDiagram;

/// Exact bottleneck distance. Empty diagrams are valid; `d(∅, ∅) = 0`.
pub fn bottleneck_distance(d: &PersistenceDiagram, e: &PersistenceDiagram) -> f64 {
    let dp: Vec<[f64; 2]> = d.pairs().iter().map(|p| p.as_point()).collect();
    let ep: Vec<[f64; 2]> = e.pairs().iter().map(|p| p.as_point()).collect();
    bottleneck_points(&dp, &ep)
}

fn inf_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// ∞-norm distance of a diagram point to the diagonal.
fn diagonal_gap(p: [f64; 2]) -> f64 {
    (p[1] - p[0]) / 2.0
}

pub(crate) fn bottleneck_points(d: &[[f64; 2]], e: &[[f64; 2]]) -> f64 {
    if d.is_empty() && e.is_empty() {
        return 0.0;
    }

    let mut candidates: Vec<f64> = Vec::with_capacity(d.len() * e.len() + d.len() + e.len() + 1);
    candidates.push(0.0);
    for &p in d {
        candidates.push(diagonal_gap(p));
        for &q in e {
            candidates.push(inf_dist(p, q));
        }
    }
    for &q in e {
        candidates.push(diagonal_gap(q));
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    candidates.dedup();

    // smallest candidate admitting a perfect matching
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(d, e, candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(d, e, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Whether a perfect multi-bijection of cost ≤ `c` exists.
///
/// Left vertices: the points of `d`, then one diagonal slot per point of `e`.
/// Right vertices: the points of `e`, then one diagonal slot per point of
/// `d`. Diagonal-to-diagonal matches are free.
fn feasible(d: &[[f64; 2]], e: &[[f64; 2]], c: f64) -> bool {
    let (nd, ne) = (d.len(), e.len());
    let left = nd + ne;
    let right = ne + nd;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left];
    for (i, &p) in d.iter().enumerate() {
        for (j, &q) in e.iter().enumerate() {
            if inf_dist(p, q) <= c {
                adj[i].push(j);
            }
        }
        if diagonal_gap(p) <= c {
            adj[i].push(ne + i);
        }
    }
    for (j, &q) in e.iter().enumerate() {
        if diagonal_gap(q) <= c {
            adj[nd + j].push(j);
        }
        adj[nd + j].extend(ne..ne + nd);
    }

    max_matching(&adj, right) == left
}

/// Kuhn's augmenting-path matching; returns the matching size.
fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let mut match_right = vec![usize::MAX; right];
    let mut size = 0;
    let mut visited = vec![0u32; right];
    let mut stamp = 0u32;
    for u in 0..adj.len() {
        stamp += 1;
        if augment(u, adj, &mut match_right, &mut visited, stamp) {
            size += 1;
        }
    }
    size
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_right: &mut [usize],
    visited: &mut [u32],
    stamp: u32,
) -> bool {
    for &v in &adj[u] {
        if visited[v] == stamp {
            continue;
        }
        visited[v] = stamp;
        if match_right[v] == usize::MAX
            || augment(match_right[v], adj, match_right, visited, stamp)
        {
            match_right[v] = u;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{PersistenceDiagram, PersistencePair};

    fn diag(pairs: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(
            1,
            pairs.iter().map(|&(birth, death)| PersistencePair { birth, death }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_matching_is_zero() {
        let d = diag(&[(0.0, 2.0), (1.0, 3.0)]);
        assert_eq!(bottleneck_distance(&d, &d), 0.0);
    }

    #[test]
    fn single_point_to_empty_goes_to_diagonal() {
        let d = diag(&[(0.0, 2.0)]);
        let e = diag(&[]);
        assert_eq!(bottleneck_distance(&d, &e), 1.0);
        assert_eq!(bottleneck_distance(&e, &d), 1.0);
        assert_eq!(bottleneck_distance(&e, &e), 0.0);
    }

    #[test]
    fn direct_match_beats_double_diagonal() {
        let d = diag(&[(0.0, 2.0)]);
        let e = diag(&[(0.5, 2.5)]);
        assert_eq!(bottleneck_distance(&d, &e), 0.5);
    }

    #[test]
    fn unbalanced_sizes_use_diagonal_for_extra_point() {
        // the far point of e must go to the diagonal at cost 0.25
        let d = diag(&[(0.0, 2.0)]);
        let e = diag(&[(0.0, 2.0), (1.0, 1.5)]);
        assert_eq!(bottleneck_distance(&d, &e), 0.25);
    }
}
