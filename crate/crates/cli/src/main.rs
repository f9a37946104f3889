use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pdstat_cli::config::{ExperimentConfig, ExperimentKind, KernelChoice};
use pdstat_cli::{experiments, CliError};

#[derive(Parser)]
#[command(
    name = "pdstat",
    about = "Persistence-diagram statistics: generation, persistence, kernels, inference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Shared {
    /// Experiment configuration (TOML)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Restore the published experiment sizes (n=50, m=40, N=1000, b=10^4,
    /// lattice side 20)
    #[arg(long)]
    paper_scale: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate point sets from the configured distribution
    Gen {
        #[command(flatten)]
        shared: Shared,
        /// How many point sets (default: stats.samples)
        #[arg(long)]
        count: Option<usize>,
        /// Which configured distribution to draw from
        #[arg(long, default_value = "a", value_parser = ["a", "b"])]
        side: String,
    },
    /// Persistence diagrams of point-set CSV files
    Pd {
        #[command(flatten)]
        shared: Shared,
        /// Point-set CSV files or a directory of them
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
    },
    /// Gram matrix of a diagram kernel over diagram CSV files
    Gram {
        #[command(flatten)]
        shared: Shared,
        /// Diagram CSV files or a directory of them
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        /// Diagram kernel (pwk-w0, pwk-w1, pwk-warc, pssk, upssk, landscape, sw)
        #[arg(long)]
        kernel: String,
        /// Homology dimension
        #[arg(long, default_value_t = 1)]
        dim: u32,
    },
    /// Bootstrap confidence bands for both configured distributions
    Band {
        #[command(flatten)]
        shared: Shared,
    },
    /// Two-sample error table over the configured kernels
    Twosample {
        #[command(flatten)]
        shared: Shared,
    },
    /// Empirical stability-inequality audit
    Audit {
        #[command(flatten)]
        shared: Shared,
    },
}

fn load_config(shared: &Shared) -> Result<ExperimentConfig, CliError> {
    let path = shared
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required for this command".into()))?;
    let mut cfg = ExperimentConfig::from_path(path)?;
    if let Some(seed) = shared.seed {
        cfg.stats.seed = seed;
    }
    if shared.paper_scale {
        cfg.apply_paper_scale();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn init_threads(shared: &Shared) -> Result<(), CliError> {
    if let Some(threads) = shared.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Other(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Expand directories into their CSV files, sorted for determinism.
fn expand_inputs(inputs: &[PathBuf], extension: &str) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(input)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.to_string_lossy().ends_with(extension))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        return Err(CliError::Config(format!("no `{extension}` inputs found")));
    }
    Ok(files)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { shared, count, side } => {
            init_threads(&shared)?;
            let cfg = load_config(&shared)?;
            let dist = match side.as_str() {
                "a" => cfg.a,
                _ => cfg.b.ok_or_else(|| {
                    CliError::Config("--side b requires a [b] distribution".into())
                })?,
            };
            let count = count.unwrap_or(cfg.stats.samples);
            let files =
                experiments::run_gen(&dist, count, cfg.stats.seed, &cfg.hash(), &shared.out_dir)?;
            println!("wrote {} point sets to {}", files.len(), shared.out_dir.display());
        }
        Command::Pd { shared, input } => {
            init_threads(&shared)?;
            let files = expand_inputs(&input, ".csv")?;
            experiments::run_pd(&files, &shared.out_dir)?;
            println!("wrote {} diagrams to {}", files.len(), shared.out_dir.display());
        }
        Command::Gram { shared, input, kernel, dim } => {
            init_threads(&shared)?;
            let choice: KernelChoice =
                kernel.parse().map_err(CliError::Config)?;
            let files = expand_inputs(&input, ".pd.csv")?;
            let section = shared
                .config
                .as_ref()
                .map(|_| load_config(&shared).map(|c| c.kernels))
                .transpose()?
                .unwrap_or_default();
            experiments::run_gram(&files, choice, dim, &section, &shared.out_dir)?;
            println!("wrote gram.csv ({} diagrams) to {}", files.len(), shared.out_dir.display());
        }
        Command::Band { shared } => {
            init_threads(&shared)?;
            let cfg = load_config(&shared)?;
            let outcome = experiments::run_band(&cfg, Some(&shared.out_dir))?;
            let n_disjoint = outcome.disjoint.iter().filter(|&&d| d).count();
            println!(
                "band: {} of {} grid points disjoint (hash {})",
                n_disjoint,
                outcome.disjoint.len(),
                outcome.config_hash
            );
        }
        Command::Twosample { shared } => {
            init_threads(&shared)?;
            let cfg = load_config(&shared)?;
            let outcome = experiments::run_twosample(&cfg, Some(&shared.out_dir))?;
            println!("kernel,type_i,type_ii");
            for row in &outcome.rows {
                println!("{},{:.3},{:.3}", row.kernel, row.type_i, row.type_ii);
            }
        }
        Command::Audit { shared } => {
            init_threads(&shared)?;
            let cfg = load_config(&shared)?;
            if cfg.experiment != ExperimentKind::StabilityAudit {
                return Err(CliError::Config(
                    "audit requires experiment = \"stability-audit\"".into(),
                ));
            }
            let report = experiments::run_stability_audit(&cfg, Some(&shared.out_dir))?;
            println!(
                "diagram stability: max ratio {:.6} ({})",
                report.diagram_stability.max_ratio,
                if report.diagram_stability.pass { "PASS" } else { "FAIL" }
            );
            println!(
                "kernel stability:  max ratio {:.6} ({})",
                report.kernel_stability.max_ratio,
                if report.kernel_stability.pass { "PASS" } else { "FAIL" }
            );
            println!(
                "expectation:       lhs {:.6} rhs {:.6} mc-se {:.6} ({})",
                report.expectation_stability.lhs,
                report.expectation_stability.rhs,
                report.expectation_stability.mc_standard_error,
                if report.expectation_stability.pass { "PASS" } else { "FAIL" }
            );
            if !report.pass {
                return Err(CliError::Other("stability audit failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
