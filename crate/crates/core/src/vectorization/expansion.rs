//! Finite kernel expansions: the representation of PWK vectors and their
//! sample means in the RKHS.
//!
//! An expansion is a finite weighted sum of kernel sections
//! `sum_i c_i k(., x_i)`. All norms and inner products go through the Gram
//! identity `<sum c_i k(.,x_i), sum d_j k(.,y_j)> = sum_ij c_i d_j k(x_i, y_j)`,
//! never through function grids.

use crate::error::{Error, Result};
use crate::geometry::PersistenceDiagram;
use crate::vectorization::kernel::{plane_kernel, KernelSpec};
use crate::vectorization::weight::{weight, WeightSpec};

/// An element of the RKHS given as a finite expansion over kernel sections.
/// Two expansions are comparable only if they share an identical kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct RkhsExpansion {
    kernel: KernelSpec,
    terms: Vec<(f64, [f64; 2])>,
}

impl RkhsExpansion {
    /// The zero vector.
    pub fn zero(kernel: KernelSpec) -> Self {
        Self { kernel, terms: vec![] }
    }

    pub fn from_terms(kernel: KernelSpec, terms: Vec<(f64, [f64; 2])>) -> Self {
        Self { kernel, terms }
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    /// Coefficient-center pairs of the expansion.
    pub fn terms(&self) -> &[(f64, [f64; 2])] {
        &self.terms
    }

    /// Pointwise evaluation `u(z) = sum_i c_i k(z, x_i)` (the reproducing
    /// property applied to the expansion).
    pub fn evaluate(&self, z: [f64; 2]) -> f64 {
        self.terms.iter().map(|&(c, x)| c * plane_kernel(z, x, &self.kernel)).sum()
    }

    /// Inner product through the Gram identity.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.kernel != other.kernel {
            return Err(Error::IncompatibleExpansion);
        }
        let mut acc = 0.0;
        for &(c, x) in &self.terms {
            for &(d, y) in &other.terms {
                acc += c * d * plane_kernel(x, y, &self.kernel);
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self).expect("kernel matches itself")
    }

    /// RKHS distance `|u - v|_H`, clamped at zero against rounding.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        let d2 = self.norm_sq() + other.norm_sq() - 2.0 * self.inner(other)?;
        Ok(d2.max(0.0).sqrt())
    }

    /// `self - other` as a concatenated expansion.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.kernel != other.kernel {
            return Err(Error::IncompatibleExpansion);
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|&(c, x)| (-c, x)));
        Ok(Self { kernel: self.kernel, terms })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            kernel: self.kernel,
            terms: self.terms.iter().map(|&(c, x)| (factor * c, x)).collect(),
        }
    }
}

/// The PWK vector of a diagram: one term `w(x) k(., x)` per diagram point.
/// The empty diagram maps to the zero vector.
pub fn pwk_vector(d: &PersistenceDiagram, k: &KernelSpec, w: &WeightSpec) -> RkhsExpansion {
    let terms = d
        .pairs()
        .iter()
        .map(|p| {
            let x = p.as_point();
            (weight(x, w), x)
        })
        .collect();
    RkhsExpansion { kernel: *k, terms }
}

/// Inner product of two expansions (Gram identity).
pub fn rkhs_inner(u: &RkhsExpansion, v: &RkhsExpansion) -> Result<f64> {
    u.inner(v)
}

/// Sample mean `n^{-1} sum_i u_i`: concatenated terms scaled by `1/n`. All
/// terms are kept; no center merging.
pub fn rkhs_mean(expansions: &[RkhsExpansion]) -> Result<RkhsExpansion> {
    let Some(first) = expansions.first() else {
        return Err(Error::InsufficientData("mean of an empty expansion list"));
    };
    let kernel = first.kernel;
    if expansions.iter().any(|e| e.kernel != kernel) {
        return Err(Error::IncompatibleExpansion);
    }
    let scale = 1.0 / expansions.len() as f64;
    let mut terms = Vec::with_capacity(expansions.iter().map(|e| e.terms.len()).sum());
    for e in expansions {
        terms.extend(e.terms.iter().map(|&(c, x)| (scale * c, x)));
    }
    Ok(RkhsExpansion { kernel, terms })
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

    fn k1() -> KernelSpec {
        KernelSpec::gaussian(1.0).unwrap()
    }

    #[test]
    fn empty_diagram_is_zero_vector() {
        let u = pwk_vector(&diag(&[]), &k1(), &WeightSpec::Linear);
        assert!(u.terms().is_empty());
        assert_eq!(u.evaluate([0.3, 0.9]), 0.0);
        assert_eq!(u.norm_sq(), 0.0);
    }

    #[test]
    fn linear_weight_coefficient() {
        let u = pwk_vector(&diag(&[(0.0, 2.0)]), &k1(), &WeightSpec::Linear);
        assert_eq!(u.terms(), &[(2.0, [0.0, 2.0])]);
        assert_eq!(u.evaluate([0.0, 2.0]), 2.0);
    }

    #[test]
    fn multiplicity_two_gives_norm_sq_four() {
        let u = pwk_vector(&diag(&[(0.0, 1.0), (0.0, 1.0)]), &k1(), &WeightSpec::Unweighted);
        assert_eq!(u.terms().len(), 2);
        assert!((u.norm_sq() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn inner_product_double_sum() {
        let u = pwk_vector(&diag(&[(0.0, 1.0), (0.0, 2.0)]), &k1(), &WeightSpec::Unweighted);
        let v = pwk_vector(&diag(&[(0.0, 1.0)]), &k1(), &WeightSpec::Unweighted);
        let expected = 1.0 + (-0.5f64).exp();
        assert!((rkhs_inner(&u, &v).unwrap() - expected).abs() < 1e-15);
        assert_eq!(rkhs_inner(&u, &RkhsExpansion::zero(k1())).unwrap(), 0.0);
    }

    #[test]
    fn kernel_mismatch_is_rejected() {
        let u = RkhsExpansion::zero(k1());
        let v = RkhsExpansion::zero(KernelSpec::gaussian(2.0).unwrap());
        assert!(matches!(u.inner(&v), Err(Error::IncompatibleExpansion)));
    }

    #[test]
    fn mean_is_linear() {
        let c = [0.4, -0.3];
        let u = RkhsExpansion::from_terms(k1(), vec![(2.0, c)]);
        let v = RkhsExpansion::from_terms(k1(), vec![(4.0, c)]);
        let m = rkhs_mean(&[u.clone(), v]).unwrap();
        assert!((m.evaluate(c) - 3.0).abs() < 1e-15);

        let single = rkhs_mean(&[u.clone()]).unwrap();
        assert_eq!(single.evaluate([0.1, 0.2]), u.evaluate([0.1, 0.2]));

        assert!(rkhs_mean(&[]).is_err());
    }

    #[test]
    fn identical_expansions_average_to_same_function() {
        let u = pwk_vector(&diag(&[(0.1, 0.9), (0.2, 1.4)]), &k1(), &WeightSpec::Linear);
        let m = rkhs_mean(&[u.clone(), u.clone(), u.clone()]).unwrap();
        for z in [[0.0, 0.0], [0.1, 0.9], [-1.0, 2.0]] {
            assert!((m.evaluate(z) - u.evaluate(z)).abs() < 1e-12);
        }
    }
}
