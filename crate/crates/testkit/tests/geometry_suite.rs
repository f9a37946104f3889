//! Cross-validation of the geometry pipeline against independent oracles and
//! the stability theorem.

use pdstat_core::rng::{domain, substream};
use pdstat_core::{
    alpha_persistence, bottleneck_distance, hausdorff_distance, PersistenceDiagram,
    PersistencePair, PointSet,
};
use pdstat_testkit::{cech_persistence, exhaustive_bottleneck, random_diagram, random_point_set};
use rand::Rng;

fn sorted_pairs(d: &PersistenceDiagram) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = d.pairs().iter().map(|p| (p.birth, p.death)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn alpha_equals_brute_force_cech_on_small_sets() {
    for trial in 0..200u64 {
        let mut rng = substream(42, domain::TEST, trial);
        let count = rng.gen_range(1..=8);
        let pts: Vec<[f64; 2]> =
            (0..count).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        let ps = PointSet::new(pts.clone()).unwrap();
        for q in 0..=1u32 {
            let (alpha_d, alpha_e) = alpha_persistence(&ps, q).unwrap();
            let (mut cech_d, mut cech_e) = cech_persistence(&pts, q);
            cech_d.sort_by(|a, b| a.partial_cmp(b).unwrap());
            cech_e.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(
                sorted_pairs(&alpha_d),
                cech_d,
                "diagram mismatch: trial {trial} q {q} points {pts:?}"
            );
            let mut alpha_ess = alpha_e.births().to_vec();
            alpha_ess.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(alpha_ess, cech_e, "essential mismatch: trial {trial} q {q}");
        }
    }
}

#[test]
fn bottleneck_matches_exhaustive_enumeration() {
    for trial in 0..200u64 {
        let mut rng = substream(43, domain::TEST, trial);
        let nd = rng.gen_range(0..=6);
        let ne = rng.gen_range(0..=6);
        let d = random_diagram(nd, 1.0, 1000 + trial * 2);
        let e = random_diagram(ne, 1.0, 1001 + trial * 2);
        let fast = bottleneck_distance(&d, &e);
        let dp: Vec<[f64; 2]> = d.pairs().iter().map(|p| p.as_point()).collect();
        let ep: Vec<[f64; 2]> = e.pairs().iter().map(|p| p.as_point()).collect();
        let exact = exhaustive_bottleneck(&dp, &ep);
        assert!(
            (fast - exact).abs() <= 1e-9,
            "trial {trial}: {fast} vs {exact}"
        );
    }
}

#[test]
fn diagram_stability_under_perturbation() {
    // d_B(D_q(X), D_q(Y)) <= d_H(X, Y) on pairs (X, X + noise)
    for trial in 0..100u64 {
        let mut rng = substream(44, domain::TEST, trial);
        let count = rng.gen_range(5..=30);
        let x = random_point_set(count, 2.0, 500 + trial);
        let eps = 0.002 + 0.05 * rng.gen::<f64>();
        let perturbed: Vec<[f64; 2]> = x
            .points()
            .iter()
            .map(|p| {
                [
                    p[0] + eps * (2.0 * rng.gen::<f64>() - 1.0),
                    p[1] + eps * (2.0 * rng.gen::<f64>() - 1.0),
                ]
            })
            .collect();
        let y = PointSet::new(perturbed).unwrap();
        let dh = hausdorff_distance(&x, &y).unwrap();
        for q in 0..=1u32 {
            let (dx, _) = alpha_persistence(&x, q).unwrap();
            let (dy, _) = alpha_persistence(&y, q).unwrap();
            let db = bottleneck_distance(&dx, &dy);
            assert!(
                db <= dh + 1e-9,
                "trial {trial} q {q}: bottleneck {db} > hausdorff {dh}"
            );
        }
    }
}

#[test]
fn bottleneck_metric_axioms() {
    for trial in 0..60u64 {
        let a = random_diagram(trial as usize % 5 + 1, 1.0, 900 + trial * 3);
        let b = random_diagram((trial as usize + 2) % 6 + 1, 1.0, 901 + trial * 3);
        let c = random_diagram((trial as usize + 4) % 4 + 1, 1.0, 902 + trial * 3);
        let ab = bottleneck_distance(&a, &b);
        let ba = bottleneck_distance(&b, &a);
        assert_eq!(ab, ba, "symmetry must be exact");
        let ac = bottleneck_distance(&a, &c);
        let cb = bottleneck_distance(&c, &b);
        assert!(ab <= ac + cb + 1e-9, "triangle inequality violated");
        assert_eq!(bottleneck_distance(&a, &a), 0.0);
    }
}

#[test]
fn diagrams_invariant_under_point_reordering() {
    for trial in 0..40u64 {
        let mut rng = substream(45, domain::TEST, trial);
        let count = rng.gen_range(3..=25);
        let ps = random_point_set(count, 1.0, 700 + trial);
        let mut shuffled = ps.points().to_vec();
        // deterministic shuffle
        for i in (1..shuffled.len()).rev() {
            let j = rng.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let ps2 = PointSet::new(shuffled).unwrap();
        for q in 0..=1u32 {
            let (d1, _) = alpha_persistence(&ps, q).unwrap();
            let (d2, _) = alpha_persistence(&ps2, q).unwrap();
            assert_eq!(sorted_pairs(&d1), sorted_pairs(&d2), "trial {trial} q {q}");
        }
    }
}

#[test]
fn multiset_semantics_duplicate_pairs_count() {
    let d = PersistenceDiagram::new(
        1,
        vec![
            PersistencePair { birth: 0.0, death: 1.0 },
            PersistencePair { birth: 0.0, death: 1.0 },
        ],
    )
    .unwrap();
    let e = PersistenceDiagram::new(1, vec![PersistencePair { birth: 0.0, death: 1.0 }]).unwrap();
    // the second copy must be matched to the diagonal
    assert_eq!(bottleneck_distance(&d, &e), 0.5);
}
