//! Persistence landscapes and their L² inner-product kernel.
//!
//! The level-`k` landscape of a diagram is the k-th largest value of the tent
//! functions `max(min(t - b, d - t), 0)`. [`landscape`] evaluates that
//! definition pointwise; [`LandscapeProfiles`] builds every level as an
//! explicit piecewise-linear polyline by an envelope sweep, which lets
//! [`landscape_kernel`] integrate products of levels in closed form on the
//! union of breakpoints instead of on a grid.

use crate::geometry::PersistenceDiagram;

/// Level-`level` landscape value at `t` (1-based level), straight from the
/// definition. Returns 0 when `level` exceeds the diagram size.
pub fn landscape(d: &PersistenceDiagram, level: usize, t: f64) -> f64 {
    assert!(level >= 1, "landscape levels are 1-based");
    if level > d.len() {
        return 0.0;
    }
    let mut values: Vec<f64> = d
        .pairs()
        .iter()
        .map(|p| (t - p.birth).min(p.death - t).max(0.0))
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite tent values"));
    values[level - 1]
}

/// All landscape levels of one diagram as polylines (vertex lists with
/// strictly increasing abscissae inside; levels are 0 outside their range).
#[derive(Debug, Clone)]
pub struct LandscapeProfiles {
    levels: Vec<Vec<(f64, f64)>>,
}

impl LandscapeProfiles {
    pub fn new(d: &PersistenceDiagram) -> Self {
        // sort by (birth asc, death desc); the head then dominates the rest
        // of its level
        let mut pending: Vec<(f64, f64)> = d
            .pairs()
            .iter()
            .filter(|p| p.death > p.birth)
            .map(|p| (p.birth, p.death))
            .collect();
        pending.sort_by(|a, b| cmp_pair(*a, *b));

        let mut levels = Vec::new();
        while !pending.is_empty() {
            let (b, d) = pending.remove(0);
            let mut poly = vec![(b, 0.0), ((b + d) / 2.0, (d - b) / 2.0)];
            let mut death = d;
            let mut scan = 0usize;
            loop {
                // first remaining tent that outlives the current one
                match (scan..pending.len()).find(|&i| pending[i].1 > death) {
                    None => {
                        poly.push((death, 0.0));
                        break;
                    }
                    Some(i) => {
                        let (nb, nd) = pending.remove(i);
                        scan = i;
                        if nb >= death {
                            // disjoint: touch down, maybe rest on the ground
                            poly.push((death, 0.0));
                            if nb > death {
                                poly.push((nb, 0.0));
                            }
                        } else {
                            // crossing; the clipped remainder of the current
                            // tent drops to a lower level
                            poly.push(((nb + death) / 2.0, (death - nb) / 2.0));
                            let leftover = (nb, death);
                            if leftover.1 > leftover.0 {
                                let at = scan
                                    + pending[scan..].partition_point(|&p| {
                                        cmp_pair(p, leftover) == std::cmp::Ordering::Less
                                    });
                                pending.insert(at, leftover);
                            }
                        }
                        poly.push(((nb + nd) / 2.0, (nd - nb) / 2.0));
                        death = nd;
                    }
                }
            }
            levels.push(poly);
        }
        Self { levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, level: usize) -> Option<&[(f64, f64)]> {
        self.levels.get(level - 1).map(Vec::as_slice)
    }

    /// Linear interpolation on level `level` (1-based); 0 outside its range.
    pub fn value(&self, level: usize, t: f64) -> f64 {
        let Some(poly) = self.levels.get(level - 1) else { return 0.0 };
        interpolate(poly, t)
    }
}

fn cmp_pair(a: (f64, f64), b: (f64, f64)) -> std::cmp::Ordering {
    a.0.partial_cmp(&b.0)
        .expect("finite births")
        .then(b.1.partial_cmp(&a.1).expect("finite deaths"))
}

fn interpolate(poly: &[(f64, f64)], t: f64) -> f64 {
    if poly.is_empty() || t <= poly[0].0 || t >= poly[poly.len() - 1].0 {
        return edge_case(poly, t);
    }
    let idx = poly.partition_point(|&(x, _)| x <= t);
    let (x0, y0) = poly[idx - 1];
    let (x1, y1) = poly[idx];
    if x1 == x0 {
        return y0;
    }
    y0 + (y1 - y0) * (t - x0) / (x1 - x0)
}

fn edge_case(poly: &[(f64, f64)], t: f64) -> f64 {
    match poly.iter().find(|&&(x, _)| x == t) {
        Some(&(_, y)) => y,
        None => 0.0,
    }
}

/// Exact L²(ℕ × ℝ) inner product of the landscapes of two diagrams,
/// integrating the product of piecewise-linear levels analytically over the
/// common breakpoint refinement.
pub fn landscape_kernel(d: &PersistenceDiagram, e: &PersistenceDiagram) -> f64 {
    landscape_kernel_profiles(&LandscapeProfiles::new(d), &LandscapeProfiles::new(e))
}

pub fn landscape_kernel_profiles(a: &LandscapeProfiles, b: &LandscapeProfiles) -> f64 {
    let depth = a.depth().min(b.depth());
    (1..=depth)
        .map(|k| polyline_l2_inner(a.level(k).unwrap(), b.level(k).unwrap()))
        .sum()
}

fn polyline_l2_inner(f: &[(f64, f64)], g: &[(f64, f64)]) -> f64 {
    if f.is_empty() || g.is_empty() {
        return 0.0;
    }
    let lo = f[0].0.max(g[0].0);
    let hi = f[f.len() - 1].0.min(g[g.len() - 1].0);
    if lo >= hi {
        return 0.0;
    }
    let mut xs: Vec<f64> = f
        .iter()
        .map(|&(x, _)| x)
        .chain(g.iter().map(|&(x, _)| x))
        .filter(|&x| x > lo && x < hi)
        .collect();
    xs.push(lo);
    xs.push(hi);
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    xs.dedup();

    let mut total = 0.0;
    let mut f0 = interpolate(f, xs[0]);
    let mut g0 = interpolate(g, xs[0]);
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let f1 = interpolate(f, x1);
        let g1 = interpolate(g, x1);
        // both factors linear on [x0, x1]; Simpson is exact for quadratics.
        // Grouped so the expression is bitwise symmetric in (f, g).
        total += (x1 - x0) * (2.0 * (f0 * g0 + f1 * g1) + (f0 * g1 + f1 * g0)) / 6.0;
        f0 = f1;
        g0 = g1;
    }
    total
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
    fn single_tent_peak() {
        let d = diag(&[(0.0, 2.0)]);
        assert_eq!(landscape(&d, 1, 1.0), 1.0);
        assert_eq!(landscape(&d, 1, 0.5), 0.5);
        assert_eq!(landscape(&d, 1, 2.5), 0.0);
        assert_eq!(landscape(&d, 2, 1.0), 0.0, "level above |D| is zero");
    }

    #[test]
    fn second_level_of_two_tents() {
        let d = diag(&[(0.0, 2.0), (1.0, 3.0)]);
        assert_eq!(landscape(&d, 2, 1.5), 0.5);
    }

    #[test]
    fn profiles_match_pointwise_definition() {
        let d = diag(&[(0.0, 2.0), (1.0, 3.0), (0.5, 4.0), (2.5, 3.5), (0.5, 4.0)]);
        let profiles = LandscapeProfiles::new(&d);
        for level in 1..=d.len() + 1 {
            let mut t = -0.5;
            while t < 4.6 {
                let direct = landscape(&d, level, t);
                let poly = profiles.value(level, t);
                assert!(
                    (direct - poly).abs() < 1e-12,
                    "level {level} t {t}: {direct} vs {poly}"
                );
                t += 0.0173;
            }
        }
    }

    #[test]
    fn kernel_of_single_shared_tent() {
        // integral of the unit tent squared over [0,2] = 2/3
        let d = diag(&[(0.0, 2.0)]);
        assert!((landscape_kernel(&d, &d) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_with_empty_diagram_is_zero() {
        let d = diag(&[(0.0, 2.0)]);
        let e = diag(&[]);
        assert_eq!(landscape_kernel(&d, &e), 0.0);
    }

    #[test]
    fn kernel_is_symmetric() {
        let d = diag(&[(0.0, 2.0), (0.7, 2.9), (1.0, 1.4)]);
        let e = diag(&[(0.2, 1.8), (1.5, 3.0)]);
        assert_eq!(landscape_kernel(&d, &e), landscape_kernel(&e, &d));
    }

    #[test]
    fn kernel_matches_trapezoid_quadrature() {
        let d = diag(&[(0.0, 2.0), (0.4, 2.7), (1.1, 1.9)]);
        let e = diag(&[(0.3, 2.2), (0.9, 3.1), (1.0, 1.6), (0.1, 0.8)]);
        let exact = landscape_kernel(&d, &e);
        let steps = 400_000;
        let (lo, hi) = (-0.5, 3.6);
        let h = (hi - lo) / steps as f64;
        let mut numeric = 0.0;
        for level in 1..=d.len().min(e.len()) {
            for i in 0..=steps {
                let t = lo + i as f64 * h;
                let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                numeric += w * landscape(&d, level, t) * landscape(&e, level, t);
            }
        }
        numeric *= h;
        assert!((exact - numeric).abs() < 1e-6, "{exact} vs {numeric}");
    }
}
