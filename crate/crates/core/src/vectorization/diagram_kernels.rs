//! Positive definite kernels on persistence diagrams and Gram assembly.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::PersistenceDiagram;
use crate::vectorization::expansion::pwk_vector;
use crate::vectorization::kernel::KernelSpec;
use crate::vectorization::landscape::{landscape_kernel_profiles, LandscapeProfiles};
use crate::vectorization::weight::WeightSpec;

/// Gaussian kernel on PWK vectors:
/// `K(D, E) = exp(-|V(D) - V(E)|_H^2 / (2 tau^2))`.
pub fn pwk_diagram_kernel(
    d: &PersistenceDiagram,
    e: &PersistenceDiagram,
    k: &KernelSpec,
    w: &WeightSpec,
    tau: f64,
) -> f64 {
    let u = pwk_vector(d, k, w);
    let v = pwk_vector(e, k, w);
    let d2 = u.norm_sq() + v.norm_sq() - 2.0 * u.inner(&v).expect("same kernel");
    (-d2.max(0.0) / (2.0 * tau * tau)).exp()
}

/// Scale-space kernel
/// `K(D, E; t) = (8 pi t)^{-1} sum_{x in D} sum_{y in E} e^{-|x-y|^2/8t} - e^{-|x-ybar|^2/8t}`,
/// with `ybar` the reflection of `y` across the diagonal. Vanishes when either
/// diagram is empty or lies on the diagonal.
pub fn pssk(d: &PersistenceDiagram, e: &PersistenceDiagram, t: f64) -> f64 {
    let mut acc = 0.0;
    for p in d.pairs() {
        let x = p.as_point();
        for q in e.pairs() {
            let y = q.as_point();
            let ybar = [y[1], y[0]];
            acc += (-dist_sq(x, y) / (8.0 * t)).exp() - (-dist_sq(x, ybar) / (8.0 * t)).exp();
        }
    }
    acc / (8.0 * std::f64::consts::PI * t)
}

/// Gaussian kernel on the scale-space embeddings:
/// `exp(-|Phi_t(D) - Phi_t(E)|^2 / (2 tau^2))` with the squared L² distance
/// recovered from scale-space kernel values. (The exponent is negated so the
/// kernel is bounded and positive definite.)
pub fn upssk(d: &PersistenceDiagram, e: &PersistenceDiagram, t: f64, tau: f64) -> f64 {
    let d2 = pssk(d, d, t) + pssk(e, e, t) - 2.0 * pssk(d, e, t);
    (-d2.max(0.0) / (2.0 * tau * tau)).exp()
}

/// Sliced Wasserstein distance between diagrams with diagonal-projection
/// augmentation. The circle integral is approximated by the uniform average
/// over `directions` angles `pi (m + 1/2) / directions` on `[0, pi)`
/// (antipodal directions give equal transport costs, so the half circle
/// suffices); each 1D cost is the exact sorted-coordinate W1.
pub fn sliced_wasserstein(
    d: &PersistenceDiagram,
    e: &PersistenceDiagram,
    directions: usize,
) -> f64 {
    assert!(directions >= 1, "at least one projection direction");
    let dp: Vec<[f64; 2]> = d.pairs().iter().map(|p| p.as_point()).collect();
    let ep: Vec<[f64; 2]> = e.pairs().iter().map(|p| p.as_point()).collect();

    let n = dp.len() + ep.len();
    if n == 0 {
        return 0.0;
    }
    let mut side_a = Vec::with_capacity(n);
    let mut side_b = Vec::with_capacity(n);
    let mut total = 0.0;
    for m in 0..directions {
        let theta = std::f64::consts::PI * (m as f64 + 0.5) / directions as f64;
        let (sin, cos) = theta.sin_cos();
        let project = |p: [f64; 2]| p[0] * cos + p[1] * sin;
        let project_diag = |p: [f64; 2]| (p[0] + p[1]) / 2.0 * (cos + sin);

        side_a.clear();
        side_b.clear();
        side_a.extend(dp.iter().map(|&p| project(p)));
        side_a.extend(ep.iter().map(|&p| project_diag(p)));
        side_b.extend(ep.iter().map(|&p| project(p)));
        side_b.extend(dp.iter().map(|&p| project_diag(p)));
        side_a.sort_by(|a, b| a.partial_cmp(b).expect("finite projections"));
        side_b.sort_by(|a, b| a.partial_cmp(b).expect("finite projections"));

        total += side_a
            .iter()
            .zip(&side_b)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    }
    total / directions as f64
}

/// Default number of projection directions for the sliced Wasserstein
/// distance.
pub const DEFAULT_SW_DIRECTIONS: usize = 64;

/// `K(D, E) = exp(-SW(D, E) / (2 tau^2))`.
pub fn sw_kernel(
    d: &PersistenceDiagram,
    e: &PersistenceDiagram,
    tau: f64,
    directions: usize,
) -> f64 {
    (-sliced_wasserstein(d, e, directions) / (2.0 * tau * tau)).exp()
}

fn dist_sq(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    dx * dx + dy * dy
}

/// A concrete choice of diagram-level kernel with all parameters fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagramKernel {
    Pwk { kernel: KernelSpec, weight: WeightSpec, tau: f64 },
    Landscape,
    Pssk { t: f64 },
    UPssk { t: f64, tau: f64 },
    SlicedWasserstein { tau: f64, directions: usize },
}

impl DiagramKernel {
    pub fn apply(&self, d: &PersistenceDiagram, e: &PersistenceDiagram) -> f64 {
        match self {
            Self::Pwk { kernel, weight, tau } => pwk_diagram_kernel(d, e, kernel, weight, *tau),
            Self::Landscape => landscape_kernel_profiles(
                &LandscapeProfiles::new(d),
                &LandscapeProfiles::new(e),
            ),
            Self::Pssk { t } => pssk(d, e, *t),
            Self::UPssk { t, tau } => upssk(d, e, *t, *tau),
            Self::SlicedWasserstein { tau, directions } => sw_kernel(d, e, *tau, *directions),
        }
    }

    /// Serializable record of the kernel family and parameters, for sidecars
    /// and reports.
    pub fn params(&self) -> KernelParams {
        match *self {
            Self::Pwk { kernel, weight, tau } => {
                let (weight_name, c_arc, p_arc) = match weight {
                    WeightSpec::Unweighted => ("w0", None, None),
                    WeightSpec::Linear => ("w1", None, None),
                    WeightSpec::Arctangent { scale, exponent } => {
                        ("warc", Some(scale), Some(exponent))
                    }
                };
                KernelParams {
                    family: "pwk".into(),
                    weight: Some(weight_name.into()),
                    sigma: Some(kernel.bandwidth()),
                    c_arc,
                    p_arc,
                    tau: Some(tau),
                    t: None,
                    directions: None,
                }
            }
            Self::Landscape => KernelParams { family: "landscape".into(), ..KernelParams::default() },
            Self::Pssk { t } => KernelParams {
                family: "pssk".into(),
                t: Some(t),
                ..KernelParams::default()
            },
            Self::UPssk { t, tau } => KernelParams {
                family: "upssk".into(),
                t: Some(t),
                tau: Some(tau),
                ..KernelParams::default()
            },
            Self::SlicedWasserstein { tau, directions } => KernelParams {
                family: "sw".into(),
                tau: Some(tau),
                directions: Some(directions),
                ..KernelParams::default()
            },
        }
    }
}

/// Kernel identifier and parameters attached to every Gram matrix.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KernelParams {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_arc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_arc: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub directions: Option<usize>,
}

/// Symmetric matrix of pairwise diagram-kernel values plus the kernel record.
#[derive(Debug, Clone)]
pub struct DiagramGram {
    matrix: DMatrix<f64>,
    params: KernelParams,
}

impl DiagramGram {
    pub fn from_matrix(matrix: DMatrix<f64>, params: KernelParams) -> Self {
        Self { matrix, params }
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }
}

/// Per-diagram state reused across Gram entries.
enum Prepared {
    Pwk(crate::vectorization::RkhsExpansion),
    Landscape(LandscapeProfiles),
    Plain,
}

/// Assembles the Gram matrix `K(D_i, D_j)`. Entries are computed
/// data-parallel over pairs; every entry is a pure function of its pair, so
/// the result does not depend on the schedule.
pub fn diagram_gram(diagrams: &[PersistenceDiagram], kernel: &DiagramKernel) -> DiagramGram {
    let n = diagrams.len();
    let prepared: Vec<Prepared> = diagrams
        .iter()
        .map(|d| match kernel {
            DiagramKernel::Pwk { kernel: k, weight, .. } => Prepared::Pwk(pwk_vector(d, k, weight)),
            DiagramKernel::Landscape => Prepared::Landscape(LandscapeProfiles::new(d)),
            _ => Prepared::Plain,
        })
        .collect();

    let pair_value = |i: usize, j: usize| -> f64 {
        match (kernel, &prepared[i], &prepared[j]) {
            (DiagramKernel::Pwk { tau, .. }, Prepared::Pwk(u), Prepared::Pwk(v)) => {
                let d2 = u.norm_sq() + v.norm_sq() - 2.0 * u.inner(v).expect("same kernel");
                (-d2.max(0.0) / (2.0 * tau * tau)).exp()
            }
            (DiagramKernel::Landscape, Prepared::Landscape(a), Prepared::Landscape(b)) => {
                landscape_kernel_profiles(a, b)
            }
            _ => kernel.apply(&diagrams[i], &diagrams[j]),
        }
    };

    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| pair_value(i, j)).collect())
        .collect();

    let mut matrix = DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + off;
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    DiagramGram { matrix, params: kernel.params() }
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
    fn pwk_kernel_identity_is_exactly_one() {
        let d = diag(&[(0.0, 1.0), (0.5, 2.0)]);
        assert_eq!(pwk_diagram_kernel(&d, &d, &k1(), &WeightSpec::Linear, 0.7), 1.0);
    }

    #[test]
    fn pwk_kernel_two_singletons() {
        let d = diag(&[(0.0, 1.0)]);
        let e = diag(&[(0.0, 3.0)]);
        // |x-y|^2 = 4 so the cross kernel is e^{-2}; norm^2 = 2 - 2 e^{-2}
        let expected = (-(2.0 - 2.0 * (-2.0f64).exp()) / 2.0).exp();
        let got = pwk_diagram_kernel(&d, &e, &k1(), &WeightSpec::Unweighted, 1.0);
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn pssk_examples() {
        let e = diag(&[]);
        let d = diag(&[(0.0, 2.0)]);
        assert_eq!(pssk(&d, &e, 0.5), 0.0);
        // |x - xbar|^2 = 8 for x = (0, 2)
        for t in [0.3f64, 0.5, 2.0] {
            let expected = (1.0 - (-1.0 / t).exp()) / (8.0 * std::f64::consts::PI * t);
            assert!((pssk(&d, &d, t) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn upssk_identity_and_symmetry() {
        let d = diag(&[(0.0, 2.0), (1.0, 1.5)]);
        let e = diag(&[(0.3, 0.9)]);
        assert_eq!(upssk(&d, &d, 0.5, 1.0), 1.0);
        assert_eq!(upssk(&d, &e, 0.5, 1.0), upssk(&e, &d, 0.5, 1.0));
        let v = upssk(&d, &e, 0.5, 1.0);
        assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn sliced_wasserstein_identity_and_symmetry() {
        let d = diag(&[(0.0, 2.0), (1.0, 1.5)]);
        let e = diag(&[(0.3, 0.9)]);
        assert_eq!(sliced_wasserstein(&d, &d, 16), 0.0);
        assert_eq!(sliced_wasserstein(&d, &e, 16), sliced_wasserstein(&e, &d, 16));
    }

    #[test]
    fn sliced_wasserstein_quadrature_refinement() {
        let d = diag(&[(0.0, 2.0)]);
        let e = diag(&[]);
        let coarse = sliced_wasserstein(&d, &e, 64);
        let fine = sliced_wasserstein(&d, &e, 4096);
        assert!((coarse - fine).abs() < 1e-3);
        // analytic value: mean over theta of sqrt(2)|sin(theta - pi/4)|
        let analytic = 2.0 * std::f64::consts::SQRT_2 / std::f64::consts::PI;
        assert!((fine - analytic).abs() < 1e-6);
    }

    #[test]
    fn sw_kernel_monotone_in_distance() {
        let d = diag(&[(0.0, 2.0)]);
        let e1 = diag(&[(0.1, 1.9)]);
        let e2 = diag(&[(0.8, 1.1)]);
        let tau = 0.5;
        assert_eq!(sw_kernel(&d, &d, tau, 32), 1.0);
        assert!(sw_kernel(&d, &e1, tau, 32) > sw_kernel(&d, &e2, tau, 32));
    }

    #[test]
    fn gram_is_symmetric_with_unit_diagonal_for_normalized_kernels() {
        let diagrams = vec![
            diag(&[(0.0, 1.0)]),
            diag(&[(0.2, 1.4), (0.5, 0.9)]),
            diag(&[]),
            diag(&[(1.0, 2.5)]),
        ];
        let kernel = DiagramKernel::Pwk {
            kernel: k1(),
            weight: WeightSpec::Linear,
            tau: 1.0,
        };
        let gram = diagram_gram(&diagrams, &kernel);
        assert_eq!(gram.size(), 4);
        for i in 0..4 {
            assert_eq!(gram.value(i, i), 1.0);
            for j in 0..4 {
                assert_eq!(gram.value(i, j), gram.value(j, i));
            }
        }
        assert_eq!(gram.params().family, "pwk");
    }
}
