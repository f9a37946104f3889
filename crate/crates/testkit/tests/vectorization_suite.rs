//! Property suites for the RKHS embedding layer: reproducing identities,
//! norm bounds, kernel stability with derived constants, Gram positive
//! semidefiniteness, and quadrature oracles.

use nalgebra::DMatrix;
use pdstat_core::rng::{domain, substream};
use pdstat_core::{
    bottleneck_distance, diagram_gram, landscape, landscape_kernel, pwk_vector, rkhs_inner,
    sliced_wasserstein, DiagramKernel, KernelSpec, PersistenceDiagram, RkhsExpansion, WeightSpec,
};
use pdstat_testkit::random_diagram;
use rand::Rng;

fn k(sigma: f64) -> KernelSpec {
    KernelSpec::gaussian(sigma).unwrap()
}

fn random_expansion(kernel: KernelSpec, terms: usize, seed: u64) -> RkhsExpansion {
    let mut rng = substream(seed, domain::TEST, 7);
    let terms = (0..terms)
        .map(|_| {
            (
                2.0 * rng.gen::<f64>() - 1.0,
                [2.0 * rng.gen::<f64>(), 2.0 * rng.gen::<f64>()],
            )
        })
        .collect();
    RkhsExpansion::from_terms(kernel, terms)
}

#[test]
fn reproducing_consistency() {
    // evaluate(u, z) equals the inner product with the kernel section at z
    let kernel = k(0.8);
    for trial in 0..50u64 {
        let u = random_expansion(kernel, (trial % 7 + 1) as usize, 100 + trial);
        let mut rng = substream(7, domain::TEST, trial);
        let z = [rng.gen::<f64>() * 3.0, rng.gen::<f64>() * 3.0];
        let section = RkhsExpansion::from_terms(kernel, vec![(1.0, z)]);
        let lhs = u.evaluate(z);
        let rhs = rkhs_inner(&u, &section).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
    }
}

#[test]
fn uniform_norm_bounded_by_rkhs_norm() {
    // |u(z) - v(z)| <= sup sqrt(k(z,z)) * |u - v|_H with Bdd(k) = 1
    let kernel = k(0.6);
    for trial in 0..20u64 {
        let u = random_expansion(kernel, 5, 200 + trial);
        let v = random_expansion(kernel, 3, 300 + trial);
        let diff = u.difference(&v).unwrap();
        let rkhs = diff.norm_sq().max(0.0).sqrt();
        let mut rng = substream(8, domain::TEST, trial);
        for _ in 0..1000 {
            let z = [rng.gen::<f64>() * 4.0 - 1.0, rng.gen::<f64>() * 4.0 - 1.0];
            let gap = (u.evaluate(z) - v.evaluate(z)).abs();
            assert!(gap <= rkhs + 1e-9, "gap {gap} exceeds norm {rkhs}");
        }
    }
}

#[test]
fn pwk_norm_bounded_by_total_weight() {
    // |V(D)|^2 <= Bdd(k) (sum_x w(x))^2 with Bdd(k) = 1
    let kernel = k(1.1);
    let arc = WeightSpec::arctangent(2.0, 5).unwrap();
    for trial in 0..60u64 {
        let d = random_diagram((trial % 9 + 1) as usize, 1.5, 400 + trial);
        for w in [WeightSpec::Unweighted, WeightSpec::Linear, arc] {
            let v = pwk_vector(&d, &kernel, &w);
            let total: f64 = v.terms().iter().map(|&(c, _)| c).sum();
            assert!(v.norm_sq() <= total * total + 1e-9);
        }
    }
}

#[test]
fn kernel_stability_with_derived_constants() {
    // |V(D) - V(E)|_H <= (Lip(k) Bdd(w1) + sqrt(Bdd(k)) Linf(w1)) d_B(D, E)
    // over a family of diagrams with at most N points and persistence <= P:
    // Lip(k) = sqrt(2)/sigma, Bdd(w1) = N * P, Linf(w1) = 2N.
    let n_max = 8usize;
    let p_max = 2.0;
    for &sigma in &[0.5, 1.0, 2.0] {
        let kernel = k(sigma);
        let constant =
            kernel.lipschitz() * (n_max as f64 * p_max) + 1.0 * (2.0 * n_max as f64);
        for trial in 0..100u64 {
            let d = random_diagram((trial % n_max as u64 + 1) as usize, p_max, 777 + 2 * trial);
            let e = random_diagram(((trial + 3) % n_max as u64 + 1) as usize, p_max, 778 + 2 * trial);
            let u = pwk_vector(&d, &kernel, &WeightSpec::Linear);
            let v = pwk_vector(&e, &kernel, &WeightSpec::Linear);
            let lhs = u.distance(&v).unwrap();
            let rhs = constant * bottleneck_distance(&d, &e);
            assert!(
                lhs <= rhs + 1e-9,
                "sigma {sigma} trial {trial}: {lhs} > {rhs}"
            );
        }
    }
}

fn random_diagrams(n: usize, seed: u64) -> Vec<PersistenceDiagram> {
    (0..n)
        .map(|i| random_diagram(i % 6 + 1, 1.0, seed + i as u64))
        .collect()
}

#[test]
fn gram_matrices_are_positive_semidefinite() {
    let diagrams = random_diagrams(20, 4000);
    let kernel = k(0.7);
    let kernels = vec![
        DiagramKernel::Pwk { kernel, weight: WeightSpec::Linear, tau: 0.8 },
        DiagramKernel::Pwk {
            kernel,
            weight: WeightSpec::arctangent(1.5, 5).unwrap(),
            tau: 0.5,
        },
        DiagramKernel::Landscape,
        DiagramKernel::Pssk { t: 0.25 },
        DiagramKernel::UPssk { t: 0.25, tau: 0.6 },
        DiagramKernel::SlicedWasserstein { tau: 0.4, directions: 32 },
    ];
    for dk in kernels {
        let gram = diagram_gram(&diagrams, &dk);
        let m = DMatrix::from_fn(gram.size(), gram.size(), |i, j| gram.value(i, j));
        let eig = nalgebra::SymmetricEigen::new(m);
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-8, "{:?}: min eigenvalue {min}", gram.params().family);
    }
}

#[test]
fn landscape_kernel_matches_trapezoid_on_random_diagrams() {
    for trial in 0..8u64 {
        let d = random_diagram((trial % 4 + 1) as usize, 1.0, 6000 + trial);
        let e = random_diagram(((trial + 2) % 4 + 1) as usize, 1.0, 6100 + trial);
        let exact = landscape_kernel(&d, &e);
        let steps = 200_000usize;
        let (lo, hi) = (-0.5f64, 3.0f64);
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
        assert!((exact - numeric).abs() < 1e-6, "trial {trial}: {exact} vs {numeric}");
    }
}

#[test]
fn sliced_wasserstein_quadrature_converges() {
    for trial in 0..10u64 {
        let d = random_diagram((trial % 5 + 1) as usize, 1.0, 6200 + trial);
        let e = random_diagram(((trial + 1) % 5 + 1) as usize, 1.0, 6300 + trial);
        let coarse = sliced_wasserstein(&d, &e, 64);
        let fine = sliced_wasserstein(&d, &e, 4096);
        assert!((coarse - fine).abs() < 1e-3, "trial {trial}: {coarse} vs {fine}");
    }
}

#[test]
fn diagram_kernels_are_symmetric_and_unit_at_identity() {
    let kernel = k(0.9);
    let kernels = vec![
        DiagramKernel::Pwk { kernel, weight: WeightSpec::Unweighted, tau: 0.7 },
        DiagramKernel::UPssk { t: 0.3, tau: 0.5 },
        DiagramKernel::SlicedWasserstein { tau: 0.6, directions: 16 },
    ];
    for trial in 0..12u64 {
        let d = random_diagram((trial % 5 + 1) as usize, 1.0, 6400 + trial);
        let e = random_diagram(((trial + 3) % 5 + 1) as usize, 1.0, 6500 + trial);
        for dk in &kernels {
            assert_eq!(dk.apply(&d, &d), 1.0, "identity must be exactly 1");
            let v = dk.apply(&d, &e);
            let w = dk.apply(&e, &d);
            // double-sum kernels are symmetric up to summation order; the
            // sliced Wasserstein sum visits identical sorted sequences
            match dk {
                DiagramKernel::SlicedWasserstein { .. } => assert_eq!(v, w),
                _ => assert!((v - w).abs() <= 1e-13 * v.abs().max(1.0)),
            }
            assert!(v > 0.0 && v <= 1.0);
        }
    }
}
