//! Direct-summation oracle for the unbiased MMD statistic.

/// `MMD_u^2` computed straight from the definition on a kernel function over
/// index blocks `0..n_x` and `n_x..n_x+n_y`.
pub fn naive_mmd_u(k: &dyn Fn(usize, usize) -> f64, n_x: usize, n_y: usize) -> f64 {
    assert!(n_x >= 2 && n_y >= 2);
    let mut xx = 0.0;
    for i in 0..n_x {
        for j in 0..n_x {
            if i != j {
                xx += k(i, j);
            }
        }
    }
    let mut yy = 0.0;
    for a in 0..n_y {
        for b in 0..n_y {
            if a != b {
                yy += k(n_x + a, n_x + b);
            }
        }
    }
    let mut xy = 0.0;
    for i in 0..n_x {
        for a in 0..n_y {
            xy += k(i, n_x + a);
        }
    }
    xx / (n_x * (n_x - 1)) as f64 + yy / (n_y * (n_y - 1)) as f64
        - 2.0 / (n_x * n_y) as f64 * xy
}
