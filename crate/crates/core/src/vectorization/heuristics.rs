//! Median heuristics for the kernel parameters.
//!
//! Given a collection of diagrams, the bandwidth is the median over diagrams
//! of the median pairwise point distance within each diagram; the arctangent
//! scale is the reciprocal `p`-th power of the median of per-diagram median
//! persistences; and `tau` is the median of pairwise RKHS distances between
//! the PWK vectors, computed with the bandwidth and scale already fixed.

use crate::error::{Error, Result};
use crate::geometry::PersistenceDiagram;
use crate::vectorization::expansion::pwk_vector;
use crate::vectorization::kernel::KernelSpec;
use crate::vectorization::weight::WeightSpec;

/// Which weight family `tau` should be tuned for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightFamily {
    Unweighted,
    Linear,
    Arctangent,
}

/// Parameters produced by the median heuristics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianParams {
    pub sigma: f64,
    pub c_arc: f64,
    pub tau: f64,
}

impl MedianParams {
    pub fn kernel(&self) -> KernelSpec {
        KernelSpec::gaussian(self.sigma).expect("median of positive distances")
    }

    pub fn weight(&self, family: WeightFamily, p_arc: u32) -> WeightSpec {
        match family {
            WeightFamily::Unweighted => WeightSpec::Unweighted,
            WeightFamily::Linear => WeightSpec::Linear,
            WeightFamily::Arctangent => WeightSpec::Arctangent { scale: self.c_arc, exponent: p_arc },
        }
    }
}

pub fn median_heuristics(
    diagrams: &[PersistenceDiagram],
    family: WeightFamily,
    p_arc: u32,
) -> Result<MedianParams> {
    if diagrams.len() < 2 {
        return Err(Error::InsufficientData(
            "median heuristics need at least two diagrams",
        ));
    }

    // sigma: diagrams with fewer than two points have no pairwise distances
    let mut per_diagram_sigma = Vec::new();
    for d in diagrams {
        let pts: Vec<[f64; 2]> = d.pairs().iter().map(|p| p.as_point()).collect();
        if pts.len() < 2 {
            continue;
        }
        let mut dists = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let dx = pts[i][0] - pts[j][0];
                let dy = pts[i][1] - pts[j][1];
                dists.push((dx * dx + dy * dy).sqrt());
            }
        }
        per_diagram_sigma.push(median(&mut dists));
    }
    if per_diagram_sigma.is_empty() {
        return Err(Error::InsufficientData(
            "no diagram has two or more points; sigma median undefined",
        ));
    }
    let sigma = median(&mut per_diagram_sigma);
    if sigma <= 0.0 {
        return Err(Error::InsufficientData(
            "median pairwise distance is zero; sigma undefined",
        ));
    }

    let mut per_diagram_pers = Vec::new();
    for d in diagrams {
        if d.is_empty() {
            continue;
        }
        let mut pers: Vec<f64> = d.pairs().iter().map(|p| p.persistence()).collect();
        per_diagram_pers.push(median(&mut pers));
    }
    if per_diagram_pers.is_empty() {
        return Err(Error::InsufficientData(
            "all diagrams are empty; persistence median undefined",
        ));
    }
    let c_arc = median(&mut per_diagram_pers).powi(-(p_arc as i32));

    let kernel = KernelSpec::gaussian(sigma)?;
    let weight = match family {
        WeightFamily::Unweighted => WeightSpec::Unweighted,
        WeightFamily::Linear => WeightSpec::Linear,
        WeightFamily::Arctangent => WeightSpec::arctangent(c_arc, p_arc)?,
    };
    let tau = pwk_distance_median(diagrams, &kernel, &weight)?;

    Ok(MedianParams { sigma, c_arc, tau })
}

/// Median pairwise RKHS distance between PWK vectors of the diagrams; used
/// directly for the PWK diagram kernel's `tau` and reused for the rescaled
/// bandwidths.
pub fn pwk_distance_median(
    diagrams: &[PersistenceDiagram],
    kernel: &KernelSpec,
    weight: &WeightSpec,
) -> Result<f64> {
    if diagrams.len() < 2 {
        return Err(Error::InsufficientData(
            "tau median needs at least two diagrams",
        ));
    }
    let vectors: Vec<_> = diagrams.iter().map(|d| pwk_vector(d, kernel, weight)).collect();
    let norms: Vec<f64> = vectors.iter().map(|v| v.norm_sq()).collect();
    let mut dists = Vec::with_capacity(vectors.len() * (vectors.len() - 1) / 2);
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let d2 = norms[i] + norms[j] - 2.0 * vectors[i].inner(&vectors[j])?;
            dists.push(d2.max(0.0).sqrt());
        }
    }
    Ok(median(&mut dists))
}

/// Median with midpoint interpolation for even counts.
fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
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
    fn sigma_from_identical_two_point_diagrams() {
        // both diagrams have two points at distance 1
        let d = diag(&[(0.0, 1.0), (0.0, 2.0)]);
        let params = median_heuristics(&[d.clone(), d], WeightFamily::Unweighted, 5).unwrap();
        assert_eq!(params.sigma, 1.0);
    }

    #[test]
    fn c_arc_from_unit_persistence() {
        let d = diag(&[(0.0, 1.0), (1.0, 2.0)]);
        let params = median_heuristics(&[d.clone(), d], WeightFamily::Arctangent, 1).unwrap();
        assert_eq!(params.c_arc, 1.0);
    }

    #[test]
    fn tau_is_the_odd_count_median() {
        // three singleton diagrams with w0: pairwise PWK distances are
        // sqrt(2 - 2k(x,y)); kernel distances ordered by center separation
        let k = KernelSpec::gaussian(1.0).unwrap();
        let w = WeightSpec::Unweighted;
        let d1 = diag(&[(0.0, 1.0)]);
        let d2 = diag(&[(0.0, 2.0)]);
        let d3 = diag(&[(0.0, 4.0)]);
        let diagrams = [d1, d2, d3];
        let tau = pwk_distance_median(&diagrams, &k, &w).unwrap();
        let dist = |a: &PersistenceDiagram, b: &PersistenceDiagram| {
            let u = pwk_vector(a, &k, &w);
            let v = pwk_vector(b, &k, &w);
            u.distance(&v).unwrap()
        };
        let mut ds = vec![
            dist(&diagrams[0], &diagrams[1]),
            dist(&diagrams[0], &diagrams[2]),
            dist(&diagrams[1], &diagrams[2]),
        ];
        ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(tau, ds[1]);
    }

    #[test]
    fn degenerate_collections_are_rejected() {
        let empty = diag(&[]);
        let single = diag(&[(0.0, 1.0)]);
        assert!(matches!(
            median_heuristics(&[empty.clone(), empty.clone()], WeightFamily::Linear, 5),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            median_heuristics(&[single.clone(), single], WeightFamily::Linear, 5),
            Err(Error::InsufficientData(_))
        ));
    }
}
