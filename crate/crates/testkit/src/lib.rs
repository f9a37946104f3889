//! Independent oracles and synthetic data used to verify `pdstat-core`.
//!
//! Everything here recomputes results from first principles, sharing no code
//! with the implementation paths it checks: Čech persistence from
//! min-enclosing-ball radius tests over the full 2-skeleton, bottleneck
//! distance by exhaustive matching enumeration, and MMD by direct summation.

pub mod cech;
pub mod matching;
pub mod mmd_oracle;
pub mod synthetic;

pub use cech::cech_persistence;
pub use matching::exhaustive_bottleneck;
pub use mmd_oracle::naive_mmd_u;
pub use synthetic::{random_diagram, random_point_set, synthetic_diagram, DiagramLaw};

use pdstat_core::RkhsExpansion;
use rayon::prelude::*;

/// Inner product of two large expansions via fixed-chunk parallel partial
/// sums (deterministic: partial sums are reduced in chunk order).
pub fn par_inner(u: &RkhsExpansion, v: &RkhsExpansion) -> f64 {
    let ut = u.terms();
    let vt = v.terms();
    let kernel = *u.kernel();
    assert_eq!(&kernel, v.kernel());
    ut.par_chunks(256)
        .map(|chunk| {
            let mut acc = 0.0;
            for &(c, x) in chunk {
                for &(d, y) in vt {
                    acc += c * d * pdstat_core::plane_kernel(x, y, &kernel);
                }
            }
            acc
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .sum()
}

/// RKHS distance between two expansions using [`par_inner`].
pub fn par_distance(u: &RkhsExpansion, v: &RkhsExpansion) -> f64 {
    let d2 = par_inner(u, u) + par_inner(v, v) - 2.0 * par_inner(u, v);
    d2.max(0.0).sqrt()
}
