//! Exhaustive bottleneck distance for tiny diagrams: minimize over every
//! multi-bijection the max ∞-norm displacement, recursing over assignments of
//! the first diagram's points to partners or the diagonal.

/// Exact bottleneck distance of two diagrams given as `(birth, death)` point
/// slices. Exponential in the diagram sizes; intended for <= ~7 points each.
pub fn exhaustive_bottleneck(d: &[[f64; 2]], e: &[[f64; 2]]) -> f64 {
    let mut used = vec![false; e.len()];
    best_cost(d, e, 0, &mut used)
}

fn best_cost(d: &[[f64; 2]], e: &[[f64; 2]], i: usize, used: &mut Vec<bool>) -> f64 {
    if i == d.len() {
        // leftover points of e go to the diagonal
        return e
            .iter()
            .zip(used.iter())
            .filter(|&(_, &u)| !u)
            .map(|(&q, _)| diag_gap(q))
            .fold(0.0, f64::max);
    }
    let p = d[i];
    // send p to the diagonal
    let mut best = diag_gap(p).max(best_cost(d, e, i + 1, used));
    // or match p to any unused point of e
    for j in 0..e.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let cost = inf_dist(p, e[j]).max(best_cost(d, e, i + 1, used));
        used[j] = false;
        best = best.min(cost);
    }
    best
}

fn inf_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

fn diag_gap(p: [f64; 2]) -> f64 {
    (p[1] - p[0]) / 2.0
}
