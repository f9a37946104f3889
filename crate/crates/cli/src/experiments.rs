//! The experiment drivers: two-sample tables, confidence-band comparisons,
//! and the stability audit. All sampling goes through per-sample derived
//! seeds, so results are independent of thread count and evaluation order.

use std::path::Path;

use pdstat_core::rng::{derive_seed, substream};
use pdstat_core::{
    alpha_persistence, bootstrap_band, bottleneck_distance, diagram_gram, error_rate,
    hausdorff_distance, io as core_io, matern_process, median_heuristics, perturbed_lattice,
    pssk, pwk_distance_median, pwk_vector, sliced_wasserstein, ConfidenceBand, DiagramKernel,
    EvaluationGrid, KernelSpec, LatticeSpec, NullMethod, PersistenceDiagram, PointSet,
    RkhsExpansion, TwoSampleReport, WeightFamily, WeightSpec,
};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{
    DistributionSpec, ExperimentConfig, KernelChoice, KernelSection, NullChoice,
};
use crate::CliError;

/// Harness substream domains (disjoint from the core domains).
mod hdomain {
    pub const GEN_A: u32 = 100;
    pub const GEN_A2: u32 = 101;
    pub const GEN_B: u32 = 102;
    pub const RUN_H0: u32 = 103;
    pub const RUN_CROSS: u32 = 104;
    pub const BAND_A: u32 = 105;
    pub const BAND_B: u32 = 106;
    pub const AUDIT_PERTURB: u32 = 107;
    pub const AUDIT_A: u32 = 108;
    pub const AUDIT_B: u32 = 109;
}

/// Draws one point set of the distribution; `(seed, domain, index)` selects
/// an independent sample.
pub fn sample_point_set(
    dist: &DistributionSpec,
    seed: u64,
    domain: u32,
    index: u64,
) -> Result<PointSet, CliError> {
    let sample_seed = derive_seed(seed, domain, index);
    let ps = match dist {
        DistributionSpec::Lattice { .. } => {
            perturbed_lattice(&dist.lattice_spec().expect("lattice"), sample_seed)?
        }
        DistributionSpec::Poisson { .. } | DistributionSpec::Matern { .. } => {
            matern_process(&dist.matern_spec().expect("point process"), sample_seed)?
        }
    };
    Ok(ps)
}

/// Batch of diagrams in dimension `q`, one per sample index.
fn sample_diagrams(
    dist: &DistributionSpec,
    n: usize,
    q: u32,
    seed: u64,
    domain: u32,
) -> Result<Vec<PersistenceDiagram>, CliError> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let ps = sample_point_set(dist, seed, domain, i as u64)?;
            let (diagram, _) = alpha_persistence(&ps, q)?;
            Ok(diagram)
        })
        .collect()
}

fn median(values: &mut Vec<f64>) -> Result<f64, CliError> {
    if values.is_empty() {
        return Err(CliError::Other("median of empty set".into()));
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = values.len();
    Ok(if n % 2 == 1 { values[n / 2] } else { (values[n / 2 - 1] + values[n / 2]) / 2.0 })
}

/// Instantiates one diagram kernel with parameters tuned on `pool` by the
/// median heuristics, honoring the bandwidth multiplier and the tau-retuning
/// flag.
pub fn build_kernel(
    choice: KernelChoice,
    pool: &[PersistenceDiagram],
    section: &KernelSection,
) -> Result<DiagramKernel, CliError> {
    if choice == KernelChoice::Landscape {
        return Ok(DiagramKernel::Landscape);
    }
    let family = match choice {
        KernelChoice::PwkW0 => WeightFamily::Unweighted,
        KernelChoice::PwkW1 => WeightFamily::Linear,
        KernelChoice::PwkWarc => WeightFamily::Arctangent,
        // sigma/t heuristics for the scale-space kernels reuse the
        // unweighted pipeline (the weight only affects tau for PWK)
        _ => WeightFamily::Unweighted,
    };
    let params = median_heuristics(pool, family, section.p_arc)?;
    let scale = section.bandwidth_scale;
    let sigma = params.sigma * scale;

    match choice {
        KernelChoice::PwkW0 | KernelChoice::PwkW1 | KernelChoice::PwkWarc => {
            let kernel = KernelSpec::gaussian(sigma)?;
            let weight = params.weight(family, section.p_arc);
            let tau = if scale != 1.0 && section.retune_tau {
                pwk_distance_median(pool, &kernel, &weight)?
            } else {
                params.tau
            };
            Ok(DiagramKernel::Pwk { kernel, weight, tau })
        }
        KernelChoice::Pssk => {
            // t = sigma^2 / 2 at scale 1; the multiplier then acts on t
            let t = params.sigma * params.sigma / 2.0 * scale;
            Ok(DiagramKernel::Pssk { t })
        }
        KernelChoice::Upssk => {
            let t = params.sigma * params.sigma / 2.0 * scale;
            let mut dists = Vec::new();
            for i in 0..pool.len() {
                for j in i + 1..pool.len() {
                    let d2 = pssk(&pool[i], &pool[i], t) + pssk(&pool[j], &pool[j], t)
                        - 2.0 * pssk(&pool[i], &pool[j], t);
                    dists.push(d2.max(0.0).sqrt());
                }
            }
            let tau = positive_or_fallback(median(&mut dists)?);
            Ok(DiagramKernel::UPssk { t, tau })
        }
        KernelChoice::Sw => {
            let directions = section.sw_directions;
            let mut dists = Vec::new();
            for i in 0..pool.len() {
                for j in i + 1..pool.len() {
                    dists.push(sliced_wasserstein(&pool[i], &pool[j], directions));
                }
            }
            let tau = positive_or_fallback(median(&mut dists)?);
            Ok(DiagramKernel::SlicedWasserstein { tau, directions })
        }
        KernelChoice::Landscape => unreachable!(),
    }
}

/// Median distances can be zero on degenerate pools; a unit tau keeps the
/// Gaussian well defined (every distance is then zero anyway).
fn positive_or_fallback(tau: f64) -> f64 {
    if tau > 0.0 { tau } else { 1.0 }
}

fn null_method(section: &KernelSection) -> NullMethod {
    match section.null_method {
        NullChoice::Spectral => NullMethod::default(),
        NullChoice::Permutation => NullMethod::Permutation { permutations: 1000 },
    }
}

/// One table row: the type-I entry comes from a same-generator pair of
/// batches, the type-II entry from the cross pair.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub kernel: String,
    pub type_i: f64,
    pub type_ii: f64,
}

#[derive(Debug, Serialize)]
pub struct KernelRunReports {
    pub kernel: String,
    pub h0_run: TwoSampleReport,
    pub cross_run: TwoSampleReport,
}

#[derive(Debug, Serialize)]
pub struct TwosampleOutcome {
    pub config_hash: String,
    pub seed: u64,
    pub rows: Vec<TableRow>,
    pub reports: Vec<KernelRunReports>,
}

/// Generates the batches, runs the error-rate procedure per configured
/// kernel, and writes the table plus per-kernel reports.
pub fn run_twosample(
    cfg: &ExperimentConfig,
    out_dir: Option<&Path>,
) -> Result<TwosampleOutcome, CliError> {
    cfg.validate()?;
    let b_dist = cfg.b.as_ref().ok_or_else(|| {
        CliError::Config("two-sample experiments need a [b] distribution".into())
    })?;
    let stats = cfg.stats;
    let q = cfg.dimension;

    let a1 = sample_diagrams(&cfg.a, stats.samples, q, stats.seed, hdomain::GEN_A)?;
    let a2 = sample_diagrams(&cfg.a, stats.samples, q, stats.seed, hdomain::GEN_A2)?;
    let b = sample_diagrams(b_dist, stats.samples, q, stats.seed, hdomain::GEN_B)?;

    let h0_pool: Vec<PersistenceDiagram> =
        a1.iter().chain(a2.iter()).cloned().collect();
    let cross_pool: Vec<PersistenceDiagram> =
        a1.iter().chain(b.iter()).cloned().collect();

    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (k_idx, &choice) in cfg.kernels.choices.iter().enumerate() {
        let h0_kernel = build_kernel(choice, &h0_pool, &cfg.kernels)?;
        let h0_run = error_rate(
            &a1,
            &a2,
            &h0_kernel,
            stats.alpha,
            stats.subsample,
            stats.trials,
            derive_seed(stats.seed, hdomain::RUN_H0, k_idx as u64),
            null_method(&cfg.kernels),
        )?;
        let cross_kernel = build_kernel(choice, &cross_pool, &cfg.kernels)?;
        let cross_run = error_rate(
            &a1,
            &b,
            &cross_kernel,
            stats.alpha,
            stats.subsample,
            stats.trials,
            derive_seed(stats.seed, hdomain::RUN_CROSS, k_idx as u64),
            null_method(&cfg.kernels),
        )?;
        rows.push(TableRow {
            kernel: choice.label().into(),
            type_i: h0_run.rejection_rate,
            type_ii: cross_run.p_hat,
        });
        reports.push(KernelRunReports {
            kernel: choice.label().into(),
            h0_run,
            cross_run,
        });
    }

    let outcome =
        TwosampleOutcome { config_hash: cfg.hash(), seed: stats.seed, rows, reports };

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        let mut table = String::from("kernel,type_i,type_ii\n");
        for row in &outcome.rows {
            table.push_str(&format!("{},{},{}\n", row.kernel, row.type_i, row.type_ii));
        }
        std::fs::write(dir.join("twosample-table.csv"), table)?;
        core_io::write_json(&dir.join("twosample-report.json"), &outcome)?;
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
pub struct BandSideOutcome {
    pub label: String,
    pub seed: u64,
    #[serde(flatten)]
    pub band: ConfidenceBand,
}

#[derive(Debug, Serialize)]
pub struct BandOutcome {
    pub config_hash: String,
    pub seed: u64,
    pub sigma: f64,
    pub c_arc: f64,
    pub weight: String,
    pub side_a: BandSideOutcome,
    pub side_b: BandSideOutcome,
    /// per grid point: true when the two intervals do not intersect
    pub disjoint: Vec<bool>,
}

/// Bands for both distributions on the shared grid (kernel parameters pooled
/// across sides so the two bands are comparable) plus the per-point
/// disjointness report.
pub fn run_band(cfg: &ExperimentConfig, out_dir: Option<&Path>) -> Result<BandOutcome, CliError> {
    cfg.validate()?;
    let b_dist = cfg
        .b
        .as_ref()
        .ok_or_else(|| CliError::Config("band experiments need a [b] distribution".into()))?;
    let band_cfg = cfg
        .band
        .as_ref()
        .ok_or_else(|| CliError::Config("band experiments need a [band] section".into()))?;
    let stats = cfg.stats;
    let q = cfg.dimension;

    let seed_a = band_cfg.seed_a.unwrap_or_else(|| derive_seed(stats.seed, hdomain::BAND_A, 0));
    let seed_b = band_cfg.seed_b.unwrap_or_else(|| derive_seed(stats.seed, hdomain::BAND_B, 0));

    // both sides sample through the same domain: the side seeds alone decide
    // independence, so equal explicit seeds reproduce identical samples
    let diagrams_a = sample_diagrams(&cfg.a, stats.samples, q, seed_a, hdomain::GEN_A)?;
    let diagrams_b = sample_diagrams(b_dist, stats.samples, q, seed_b, hdomain::GEN_A)?;

    let pooled: Vec<PersistenceDiagram> =
        diagrams_a.iter().chain(diagrams_b.iter()).cloned().collect();
    let family = band_cfg.weight.family();
    let params = median_heuristics(&pooled, family, cfg.kernels.p_arc)?;
    let kernel = KernelSpec::gaussian(params.sigma * cfg.kernels.bandwidth_scale)?;
    let weight = params.weight(family, cfg.kernels.p_arc);

    let grid = EvaluationGrid::vertical_line(
        band_cfg.grid_center,
        band_cfg.grid_radius,
        band_cfg.grid_start,
        band_cfg.grid_end,
    )?;

    let band_a = bootstrap_band(
        &diagrams_a,
        &kernel,
        &weight,
        &grid,
        stats.alpha,
        stats.replicates,
        seed_a,
    )?;
    let band_b = bootstrap_band(
        &diagrams_b,
        &kernel,
        &weight,
        &grid,
        stats.alpha,
        stats.replicates,
        seed_b,
    )?;

    let disjoint: Vec<bool> =
        (0..grid.len()).map(|i| band_a.disjoint_at(&band_b, i)).collect();

    let outcome = BandOutcome {
        config_hash: cfg.hash(),
        seed: stats.seed,
        sigma: kernel.bandwidth(),
        c_arc: params.c_arc,
        weight: band_cfg.weight.label().into(),
        side_a: BandSideOutcome { label: cfg.a.label(), seed: seed_a, band: band_a },
        side_b: BandSideOutcome { label: b_dist.label(), seed: seed_b, band: band_b },
        disjoint,
    };

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        core_io::write_band_csv(&dir.join("band-a.csv"), &outcome.side_a.band)?;
        core_io::write_band_csv(&dir.join("band-b.csv"), &outcome.side_b.band)?;
        let mut overlap = String::from("zx,zy,a_lo,a_hi,b_lo,b_hi,disjoint\n");
        for (i, z) in grid.points().iter().enumerate() {
            overlap.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                core_io::fmt_f64(z[0]),
                core_io::fmt_f64(z[1]),
                core_io::fmt_f64(outcome.side_a.band.lower(i)),
                core_io::fmt_f64(outcome.side_a.band.upper(i)),
                core_io::fmt_f64(outcome.side_b.band.lower(i)),
                core_io::fmt_f64(outcome.side_b.band.upper(i)),
                outcome.disjoint[i]
            ));
        }
        std::fs::write(dir.join("band-overlap.csv"), overlap)?;
        core_io::write_json(&dir.join("band-report.json"), &outcome)?;
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
pub struct RatioCheck {
    pub trials: usize,
    pub max_ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ExpectationCheck {
    pub mc_samples: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub mc_standard_error: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub config_hash: String,
    pub seed: u64,
    /// bottleneck vs Hausdorff on perturbation pairs, dimensions 0 and 1
    pub diagram_stability: RatioCheck,
    /// PWK-vector stability with the derived w1 constants
    pub kernel_stability: RatioCheck,
    /// expectation stability against the translation-coupling bound
    pub expectation_stability: ExpectationCheck,
    pub pass: bool,
}

const RATIO_TOLERANCE: f64 = 1.0 + 1e-6;

/// Empirical checks of the three stability inequalities.
pub fn run_stability_audit(
    cfg: &ExperimentConfig,
    out_dir: Option<&Path>,
) -> Result<AuditReport, CliError> {
    cfg.validate()?;
    let stats = cfg.stats;
    let audit = cfg.audit;
    let q = cfg.dimension;

    // perturbation pairs: X from the configured distribution, Y = X + noise
    let mut max_diagram_ratio: f64 = 0.0;
    let mut max_kernel_ratio: f64 = 0.0;
    let mut family: Vec<(PersistenceDiagram, PersistenceDiagram)> = Vec::new();
    for trial in 0..audit.pairs {
        let x = sample_point_set(&cfg.a, stats.seed, hdomain::AUDIT_PERTURB, trial as u64)?;
        let mut rng = substream(stats.seed, hdomain::AUDIT_PERTURB, (audit.pairs + trial) as u64);
        let perturbed: Vec<[f64; 2]> = x
            .points()
            .iter()
            .map(|p| {
                [
                    p[0] + audit.perturbation * (2.0 * rng.gen::<f64>() - 1.0),
                    p[1] + audit.perturbation * (2.0 * rng.gen::<f64>() - 1.0),
                ]
            })
            .collect();
        let y = PointSet::new(perturbed)?;
        let dh = hausdorff_distance(&x, &y)?;
        for qq in 0..=1u32 {
            let (dx, _) = alpha_persistence(&x, qq)?;
            let (dy, _) = alpha_persistence(&y, qq)?;
            let db = bottleneck_distance(&dx, &dy);
            let ratio = if db == 0.0 { 0.0 } else { db / dh };
            max_diagram_ratio = max_diagram_ratio.max(ratio);
            if qq == q {
                family.push((dx, dy));
            }
        }
    }

    // derived w1 constants over the observed diagram family
    let pooled: Vec<PersistenceDiagram> = family
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    let params = median_heuristics(&pooled, WeightFamily::Linear, cfg.kernels.p_arc)?;
    let kernel = KernelSpec::gaussian(params.sigma)?;
    let n_max = pooled.iter().map(|d| d.len()).max().unwrap_or(0) as f64;
    let p_max = pooled
        .iter()
        .flat_map(|d| d.pairs().iter().map(|p| p.persistence()))
        .fold(0.0f64, f64::max);
    let stability_constant = kernel.lipschitz() * n_max * p_max + 2.0 * n_max;
    for (dx, dy) in &family {
        let u = pwk_vector(dx, &kernel, &WeightSpec::Linear);
        let v = pwk_vector(dy, &kernel, &WeightSpec::Linear);
        let lhs = u.distance(&v)?;
        let rhs = stability_constant * bottleneck_distance(dx, dy);
        let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
        max_kernel_ratio = max_kernel_ratio.max(ratio);
    }

    let expectation = expectation_stability_check(cfg)?;

    let diagram_stability = RatioCheck {
        trials: audit.pairs,
        max_ratio: max_diagram_ratio,
        pass: max_diagram_ratio <= RATIO_TOLERANCE,
    };
    let kernel_stability = RatioCheck {
        trials: family.len(),
        max_ratio: max_kernel_ratio,
        pass: max_kernel_ratio <= RATIO_TOLERANCE,
    };
    let pass = diagram_stability.pass && kernel_stability.pass && expectation.pass;
    let report = AuditReport {
        config_hash: cfg.hash(),
        seed: stats.seed,
        diagram_stability,
        kernel_stability,
        expectation_stability: expectation,
        pass,
    };

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        core_io::write_json(&dir.join("audit-report.json"), &report)?;
    }
    Ok(report)
}

/// Lattice sites shifted by a horizontal shear field; same noise law as the
/// base lattice. Site `(i, j)` moves by `shear * (i - 1) / (side - 1)`.
fn sheared_lattice_shifts(spec: &LatticeSpec, shear: f64) -> Vec<f64> {
    let denom = (spec.side.saturating_sub(1)).max(1) as f64;
    let mut shifts = Vec::with_capacity(spec.side * spec.side);
    for i in 1..=spec.side {
        for _ in 1..=spec.side {
            shifts.push(shear * (i - 1) as f64 / denom);
        }
    }
    shifts
}

fn sheared_lattice(spec: &LatticeSpec, shear: f64, seed: u64) -> Result<PointSet, CliError> {
    let base = perturbed_lattice(spec, seed)?;
    let shifts = sheared_lattice_shifts(spec, shear);
    let points: Vec<[f64; 2]> = base
        .points()
        .iter()
        .zip(&shifts)
        .map(|(&p, &dx)| [p[0] + dx, p[1]])
        .collect();
    Ok(PointSet::new(points)?)
}

/// Monte-Carlo check of the expectation stability: the RKHS distance between
/// the mean embeddings of the base and the sheared lattice laws must not
/// exceed the stability constant times the l2 aggregate of per-site shift
/// norms (each site's translation coupling bounds its Wasserstein distance by
/// the shift length), up to twice the Monte-Carlo standard error.
fn expectation_stability_check(cfg: &ExperimentConfig) -> Result<ExpectationCheck, CliError> {
    let spec = cfg.a.lattice_spec().ok_or_else(|| {
        CliError::Config("stability audits need a lattice [a] distribution".into())
    })?;
    let stats = cfg.stats;
    let audit = cfg.audit;
    let q = cfg.dimension;
    let mc = audit.mc_samples;

    let diagrams_a: Vec<PersistenceDiagram> = (0..mc)
        .into_par_iter()
        .map(|i| {
            let ps = perturbed_lattice(&spec, derive_seed(stats.seed, hdomain::AUDIT_A, i as u64))?;
            let (d, _) = alpha_persistence(&ps, q)?;
            Ok::<_, CliError>(d)
        })
        .collect::<Result<_, _>>()?;
    let diagrams_b: Vec<PersistenceDiagram> = (0..mc)
        .into_par_iter()
        .map(|i| {
            let ps =
                sheared_lattice(&spec, audit.shear, derive_seed(stats.seed, hdomain::AUDIT_B, i as u64))?;
            let (d, _) = alpha_persistence(&ps, q)?;
            Ok::<_, CliError>(d)
        })
        .collect::<Result<_, _>>()?;

    let pooled: Vec<PersistenceDiagram> =
        diagrams_a.iter().chain(diagrams_b.iter()).cloned().collect();
    let params = median_heuristics(&pooled, WeightFamily::Linear, cfg.kernels.p_arc)?;
    let kernel = KernelSpec::gaussian(params.sigma)?;
    let weight = WeightSpec::Linear;

    let vectors_a: Vec<RkhsExpansion> =
        diagrams_a.iter().map(|d| pwk_vector(d, &kernel, &weight)).collect();
    let vectors_b: Vec<RkhsExpansion> =
        diagrams_b.iter().map(|d| pwk_vector(d, &kernel, &weight)).collect();
    let mean_a = pdstat_core::rkhs_mean(&vectors_a)?;
    let mean_b = pdstat_core::rkhs_mean(&vectors_b)?;

    let aa = par_inner(&mean_a, &mean_a);
    let bb = par_inner(&mean_b, &mean_b);
    let ab = par_inner(&mean_a, &mean_b);
    let lhs = (aa + bb - 2.0 * ab).max(0.0).sqrt();

    // sample variance of |V - mean|^2 per side, for the MC standard error
    let variance = |vectors: &[RkhsExpansion], mean_norm_sq: f64, mean: &RkhsExpansion| {
        let m = vectors.len() as f64;
        let sum_sq: f64 = vectors
            .par_iter()
            .map(|v| v.norm_sq() + mean_norm_sq - 2.0 * par_inner(v, mean))
            .sum::<f64>();
        (sum_sq / (m - 1.0)).max(0.0)
    };
    let var_a = variance(&vectors_a, aa, &mean_a);
    let var_b = variance(&vectors_b, bb, &mean_b);
    let mc_se = (var_a / mc as f64 + var_b / mc as f64).sqrt();

    let n_max = pooled.iter().map(|d| d.len()).max().unwrap_or(0) as f64;
    let p_max = pooled
        .iter()
        .flat_map(|d| d.pairs().iter().map(|p| p.persistence()))
        .fold(0.0f64, f64::max);
    let constant = kernel.lipschitz() * n_max * p_max + 2.0 * n_max;
    // l2 aggregate of the per-site translation bounds (p = 2)
    let shift_l2 = sheared_lattice_shifts(&spec, audit.shear)
        .iter()
        .map(|s| s * s)
        .sum::<f64>()
        .sqrt();
    let rhs = constant * shift_l2;

    Ok(ExpectationCheck {
        mc_samples: mc,
        lhs,
        rhs,
        mc_standard_error: mc_se,
        pass: lhs <= rhs + 2.0 * mc_se,
    })
}

/// Deterministic chunked parallel inner product for large expansions.
fn par_inner(u: &RkhsExpansion, v: &RkhsExpansion) -> f64 {
    let kernel = *u.kernel();
    u.terms()
        .par_chunks(512)
        .map(|chunk| {
            let mut acc = 0.0;
            for &(c, x) in chunk {
                for &(d, y) in v.terms() {
                    acc += c * d * pdstat_core::plane_kernel(x, y, &kernel);
                }
            }
            acc
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .sum()
}

/// `gen` subcommand: write `count` point-set CSVs plus a JSON sidecar.
pub fn run_gen(
    dist: &DistributionSpec,
    count: usize,
    seed: u64,
    config_hash: &str,
    dir: &Path,
) -> Result<Vec<std::path::PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for i in 0..count {
        let ps = sample_point_set(dist, seed, hdomain::GEN_A, i as u64)?;
        let path = dir.join(format!("points-{i:04}.csv"));
        core_io::write_point_set_csv(&path, &ps)?;
        files.push(path);
    }
    #[derive(Serialize)]
    struct GenSidecar<'a> {
        distribution: &'a DistributionSpec,
        count: usize,
        seed: u64,
        config_hash: &'a str,
        files: Vec<String>,
    }
    core_io::write_json(
        &dir.join("points-manifest.json"),
        &GenSidecar {
            distribution: dist,
            count,
            seed,
            config_hash,
            files: files
                .iter()
                .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
                .collect(),
        },
    )?;
    Ok(files)
}

/// `pd` subcommand: persistence diagrams (dimensions 0 and 1) of each input
/// point-set CSV, with essential classes in the sidecar.
pub fn run_pd(inputs: &[std::path::PathBuf], dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for input in inputs {
        let ps = core_io::read_point_set_csv(input)?;
        let fc = pdstat_core::alpha_filtration(&ps)?;
        let (d0, e0) = pdstat_core::persistence(&fc, 0)?;
        let (d1, e1) = pdstat_core::persistence(&fc, 1)?;
        let stem = input.file_stem().unwrap().to_string_lossy();
        core_io::write_diagram_csv(&dir.join(format!("{stem}.pd.csv")), &[&d0, &d1])?;
        #[derive(Serialize)]
        struct PdSidecar<'a> {
            input: String,
            essential_births_dim0: &'a [f64],
            essential_births_dim1: &'a [f64],
        }
        core_io::write_json(
            &dir.join(format!("{stem}.pd.json")),
            &PdSidecar {
                input: input.display().to_string(),
                essential_births_dim0: e0.births(),
                essential_births_dim1: e1.births(),
            },
        )?;
    }
    Ok(())
}

/// `gram` subcommand: Gram matrix of one kernel over diagrams read from
/// `.pd.csv` files (dimension `q`), parameters from the median heuristics.
pub fn run_gram(
    inputs: &[std::path::PathBuf],
    choice: KernelChoice,
    q: u32,
    section: &KernelSection,
    dir: &Path,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let mut diagrams = Vec::new();
    for input in inputs {
        let per_dim = core_io::read_diagram_csv(input)?;
        let diagram = per_dim
            .into_iter()
            .find(|d| d.dimension() == q)
            .unwrap_or_else(|| PersistenceDiagram::empty(q));
        diagrams.push(diagram);
    }
    let kernel = build_kernel(choice, &diagrams, section)?;
    let gram = diagram_gram(&diagrams, &kernel);
    core_io::write_gram_csv(&dir.join("gram.csv"), &gram)?;
    #[derive(Serialize)]
    struct GramSidecar<'a> {
        kernel: &'a pdstat_core::KernelParams,
        dimension: u32,
        size: usize,
        inputs: Vec<String>,
    }
    core_io::write_json(
        &dir.join("gram.json"),
        &GramSidecar {
            kernel: gram.params(),
            dimension: q,
            size: gram.size(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        },
    )?;
    Ok(())
}
