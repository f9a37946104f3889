//! Distributional and structural checks for the point-set generators.

use pdstat_core::{
    matern_thin, perturbed_lattice, poisson_process, LatticeNoise, LatticeSpec, MaternVariant,
    PointSet,
};

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

#[test]
fn uniform_box_noise_variance_is_r_squared_over_three() {
    // per-coordinate variance of Unif[-r, r] is r^2 / 3
    let r = 0.3;
    let spec = LatticeSpec { side: 10, noise: LatticeNoise::UniformBox { half_width: r } };
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for seed in 0..1000u64 {
        let ps = perturbed_lattice(&spec, seed).unwrap();
        let mut site = 0usize;
        for i in 1..=10 {
            for j in 1..=10 {
                let p = ps.points()[site];
                for d in [p[0] - i as f64, p[1] - j as f64] {
                    sum += d;
                    sum_sq += d * d;
                    count += 1;
                }
                site += 1;
            }
        }
    }
    // 2 * 10^5 coordinate draws
    let mean = sum / count as f64;
    let var = sum_sq / count as f64 - mean * mean;
    let expected = r * r / 3.0;
    assert!((var - expected).abs() / expected < 0.05, "{var} vs {expected}");
}

#[test]
fn matched_moments_when_r_is_sqrt3_s() {
    let s = 0.1;
    let r = s * 3f64.sqrt();
    let var_of = |noise: LatticeNoise| -> f64 {
        let spec = LatticeSpec { side: 10, noise };
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut count = 0usize;
        for seed in 0..1000u64 {
            let ps = perturbed_lattice(&spec, 5000 + seed).unwrap();
            let mut site = 0usize;
            for i in 1..=10 {
                for j in 1..=10 {
                    let p = ps.points()[site];
                    for d in [p[0] - i as f64, p[1] - j as f64] {
                        sum += d;
                        sum_sq += d * d;
                        count += 1;
                    }
                    site += 1;
                }
            }
        }
        let mean = sum / count as f64;
        sum_sq / count as f64 - mean * mean
    };
    let var_uniform = var_of(LatticeNoise::UniformBox { half_width: r });
    let var_gauss = var_of(LatticeNoise::Gaussian { std_dev: s });
    assert!(
        (var_uniform - var_gauss).abs() / var_gauss < 0.05,
        "{var_uniform} vs {var_gauss}"
    );
}

#[test]
fn poisson_count_moments() {
    let lambda = 100.0;
    let n_seeds = 10_000u64;
    let mut total = 0usize;
    for seed in 0..n_seeds {
        total += poisson_process(lambda, seed).unwrap().len();
    }
    let mean = total as f64 / n_seeds as f64;
    // 3 sigma of the mean of Poisson(lambda) over n_seeds draws
    let three_sigma = 3.0 * (lambda / n_seeds as f64).sqrt();
    assert!((mean - lambda).abs() < three_sigma, "{mean} vs {lambda}");
}

#[test]
fn poisson_homogeneity_on_subsquares() {
    // expected count in a sub-square of area a is lambda * a
    let lambda = 200.0;
    let n_seeds = 4000u64;
    let window = [0.2, 0.7, 0.1, 0.55]; // x-lo, x-hi, y-lo, y-hi: area 0.225
    let area = (window[1] - window[0]) * (window[3] - window[2]);
    let mut total = 0usize;
    for seed in 0..n_seeds {
        let ps = poisson_process(lambda, 40_000 + seed).unwrap();
        total += ps
            .points()
            .iter()
            .filter(|p| {
                p[0] >= window[0] && p[0] < window[1] && p[1] >= window[2] && p[1] < window[3]
            })
            .count();
    }
    let mean = total as f64 / n_seeds as f64;
    let expected = lambda * area;
    assert!((mean - expected).abs() / expected < 0.05, "{mean} vs {expected}");
}

#[test]
fn hard_core_and_nesting_properties() {
    let radius = 0.08;
    for seed in 0..1000u64 {
        let base = poisson_process(60.0, 70_000 + seed).unwrap();
        let t1 = matern_thin(&base, radius, MaternVariant::TypeI, seed);
        let t2 = matern_thin(&base, radius, MaternVariant::TypeII, seed);

        let contains = |hay: &PointSet, needle: [f64; 2]| {
            hay.points().iter().any(|&p| p == needle)
        };
        // nesting: type I ⊆ type II ⊆ base, pointwise per seed
        for &p in t1.points() {
            assert!(contains(&t2, p), "type I point missing from type II");
        }
        for &p in t2.points() {
            assert!(contains(&base, p), "type II point missing from base");
        }
        assert!(t1.len() <= t2.len() && t2.len() <= base.len());

        // strict hard core for both thinnings
        for thinned in [&t1, &t2] {
            let pts = thinned.points();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    assert!(dist(pts[i], pts[j]) > radius, "hard core violated");
                }
            }
        }
    }
}

#[test]
fn generators_are_deterministic_and_seeds_differ() {
    let spec = LatticeSpec { side: 6, noise: LatticeNoise::Gaussian { std_dev: 0.1 } };
    assert_eq!(
        perturbed_lattice(&spec, 12).unwrap(),
        perturbed_lattice(&spec, 12).unwrap()
    );
    assert_ne!(
        perturbed_lattice(&spec, 12).unwrap(),
        perturbed_lattice(&spec, 13).unwrap()
    );
    assert_eq!(poisson_process(30.0, 4).unwrap(), poisson_process(30.0, 4).unwrap());
}
