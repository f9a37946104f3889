//! Experiment configuration: TOML files with flag overrides (flags win).

use std::path::Path;

use pdstat_core::{LatticeNoise, LatticeSpec, MaternSpec, MaternVariant};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    LatticeTwosample,
    MaternTwosample,
    Band,
    StabilityAudit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    Uniform,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaternKind {
    #[serde(rename = "type1")]
    Type1,
    #[serde(rename = "type2")]
    Type2,
}

/// One of the point-set distributions of the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DistributionSpec {
    Lattice { side: usize, noise: NoiseKind, amplitude: f64 },
    Poisson { intensity: f64 },
    Matern { intensity: f64, radius: f64, variant: MaternKind },
}

impl DistributionSpec {
    pub fn label(&self) -> String {
        match self {
            Self::Lattice { side, noise, amplitude } => {
                let tag = match noise {
                    NoiseKind::Uniform => "uniform",
                    NoiseKind::Gaussian => "gaussian",
                };
                format!("lattice-{side}-{tag}-{amplitude}")
            }
            Self::Poisson { intensity } => format!("poisson-{intensity}"),
            Self::Matern { intensity, radius, variant } => {
                let tag = match variant {
                    MaternKind::Type1 => "type1",
                    MaternKind::Type2 => "type2",
                };
                format!("matern-{tag}-{intensity}-{radius}")
            }
        }
    }

    pub fn lattice_spec(&self) -> Option<LatticeSpec> {
        match *self {
            Self::Lattice { side, noise, amplitude } => Some(LatticeSpec {
                side,
                noise: match noise {
                    NoiseKind::Uniform => LatticeNoise::UniformBox { half_width: amplitude },
                    NoiseKind::Gaussian => LatticeNoise::Gaussian { std_dev: amplitude },
                },
            }),
            _ => None,
        }
    }

    pub fn matern_spec(&self) -> Option<MaternSpec> {
        match *self {
            Self::Poisson { intensity } => Some(MaternSpec {
                intensity,
                radius: 0.0,
                variant: MaternVariant::None,
            }),
            Self::Matern { intensity, radius, variant } => Some(MaternSpec {
                intensity,
                radius,
                variant: match variant {
                    MaternKind::Type1 => MaternVariant::TypeI,
                    MaternKind::Type2 => MaternVariant::TypeII,
                },
            }),
            Self::Lattice { .. } => None,
        }
    }

    fn validate(&self, field: &str) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(format!("{field}: {msg}")));
        match *self {
            Self::Lattice { side, amplitude, .. } => {
                if side == 0 {
                    return bad("lattice side must be >= 1".into());
                }
                if !(amplitude.is_finite() && amplitude >= 0.0) {
                    return bad(format!("noise amplitude must be >= 0, got {amplitude}"));
                }
            }
            Self::Poisson { intensity } => {
                if !(intensity.is_finite() && intensity > 0.0) {
                    return bad(format!("intensity must be > 0, got {intensity}"));
                }
            }
            Self::Matern { intensity, radius, .. } => {
                if !(intensity.is_finite() && intensity > 0.0) {
                    return bad(format!("intensity must be > 0, got {intensity}"));
                }
                if !(radius.is_finite() && radius >= 0.0) {
                    return bad(format!("radius must be >= 0, got {radius}"));
                }
            }
        }
        Ok(())
    }
}

/// Statistical parameters. Desk-scale defaults; `--paper-scale` restores the
/// published experiment sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StatParams {
    /// samples per distribution (n)
    pub samples: usize,
    /// subsample size for the error-rate trials (m)
    pub subsample: usize,
    /// number of error-rate trials (N)
    pub trials: usize,
    pub alpha: f64,
    /// bootstrap replicates (b)
    pub replicates: usize,
    pub seed: u64,
}

impl Default for StatParams {
    fn default() -> Self {
        Self { samples: 20, subsample: 16, trials: 200, alpha: 0.05, replicates: 500, seed: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelChoice {
    #[serde(rename = "pwk-w0")]
    PwkW0,
    #[serde(rename = "pwk-w1")]
    PwkW1,
    #[serde(rename = "pwk-warc")]
    PwkWarc,
    #[serde(rename = "pssk")]
    Pssk,
    #[serde(rename = "upssk")]
    Upssk,
    #[serde(rename = "landscape")]
    Landscape,
    #[serde(rename = "sw")]
    Sw,
}

impl KernelChoice {
    pub fn all() -> Vec<Self> {
        vec![
            Self::PwkW0,
            Self::PwkW1,
            Self::PwkWarc,
            Self::Pssk,
            Self::Upssk,
            Self::Landscape,
            Self::Sw,
        ]
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::PwkW0 => "pwk-w0",
            Self::PwkW1 => "pwk-w1",
            Self::PwkWarc => "pwk-warc",
            Self::Pssk => "pssk",
            Self::Upssk => "upssk",
            Self::Landscape => "landscape",
            Self::Sw => "sw",
        }
    }
}

impl std::str::FromStr for KernelChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        KernelChoice::all()
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown kernel `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightChoice {
    W0,
    W1,
    Warc,
}

impl WeightChoice {
    pub fn family(&self) -> pdstat_core::WeightFamily {
        match self {
            Self::W0 => pdstat_core::WeightFamily::Unweighted,
            Self::W1 => pdstat_core::WeightFamily::Linear,
            Self::Warc => pdstat_core::WeightFamily::Arctangent,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::W0 => "w0",
            Self::W1 => "w1",
            Self::Warc => "warc",
        }
    }
}

/// Kernel-selection section for the two-sample experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelSection {
    pub choices: Vec<KernelChoice>,
    /// Multiplier on the heuristic bandwidths (sigma and the scale-space t).
    pub bandwidth_scale: f64,
    /// Re-estimate tau after rescaling the bandwidth (default) or keep the
    /// unscaled tau.
    pub retune_tau: bool,
    pub p_arc: u32,
    pub sw_directions: usize,
    /// Null estimation: "spectral" (default) or "permutation".
    pub null_method: NullChoice,
}

impl Default for KernelSection {
    fn default() -> Self {
        Self {
            choices: KernelChoice::all(),
            bandwidth_scale: 1.0,
            retune_tau: true,
            p_arc: pdstat_core::DEFAULT_P_ARC,
            sw_directions: pdstat_core::DEFAULT_SW_DIRECTIONS,
            null_method: NullChoice::Spectral,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NullChoice {
    Spectral,
    Permutation,
}

/// Band-experiment section: weight family plus the evaluation grid
/// (a vertical index line through `grid_center`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSection {
    pub weight: WeightChoice,
    pub grid_center: [f64; 2],
    pub grid_radius: f64,
    #[serde(default)]
    pub grid_start: usize,
    #[serde(default = "default_grid_end")]
    pub grid_end: usize,
    /// Optional per-side generation seeds (default: derived from the global
    /// seed). Setting both equal reproduces identical samples on both sides.
    #[serde(default)]
    pub seed_a: Option<u64>,
    #[serde(default)]
    pub seed_b: Option<u64>,
}

fn default_grid_end() -> usize {
    20
}

/// Stability-audit section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AuditSection {
    /// number of perturbation pairs for the diagram/kernel stability checks
    pub pairs: usize,
    /// per-coordinate half-width of the uniform perturbation
    pub perturbation: f64,
    /// maximal per-site shift of the sheared lattice (expectation check)
    pub shear: f64,
    /// Monte-Carlo samples per side for the expectation check
    pub mc_samples: usize,
}

impl Default for AuditSection {
    fn default() -> Self {
        Self { pairs: 100, perturbation: 0.05, shear: 0.05, mc_samples: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_dimension")]
    pub dimension: u32,
    pub a: DistributionSpec,
    #[serde(default)]
    pub b: Option<DistributionSpec>,
    #[serde(default)]
    pub stats: StatParams,
    #[serde(default)]
    pub kernels: KernelSection,
    #[serde(default)]
    pub band: Option<BandSection>,
    #[serde(default)]
    pub audit: AuditSection,
}

fn default_dimension() -> u32 {
    1
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| CliError::Config(format!("parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.dimension > 1 {
            return Err(CliError::Config(format!(
                "dimension: only 0 and 1 are supported, got {}",
                self.dimension
            )));
        }
        self.a.validate("a")?;
        if let Some(b) = &self.b {
            b.validate("b")?;
        }
        let s = &self.stats;
        if s.samples < 2 {
            return Err(CliError::Config("stats.samples: need at least 2".into()));
        }
        if s.subsample > s.samples {
            return Err(CliError::Config(format!(
                "stats.subsample: subsample size {} exceeds samples {}",
                s.subsample, s.samples
            )));
        }
        if s.subsample < 2 {
            return Err(CliError::Config("stats.subsample: need at least 2".into()));
        }
        if s.trials == 0 || s.replicates == 0 {
            return Err(CliError::Config("stats.trials and stats.replicates must be >= 1".into()));
        }
        if !(s.alpha > 0.0 && s.alpha < 1.0) {
            return Err(CliError::Config(format!(
                "stats.alpha: must be in (0, 1), got {}",
                s.alpha
            )));
        }
        if !(self.kernels.bandwidth_scale.is_finite() && self.kernels.bandwidth_scale > 0.0) {
            return Err(CliError::Config("kernels.bandwidth_scale: must be > 0".into()));
        }
        if self.kernels.sw_directions == 0 {
            return Err(CliError::Config("kernels.sw_directions: must be >= 1".into()));
        }
        if self.kernels.p_arc == 0 {
            return Err(CliError::Config("kernels.p_arc: must be >= 1".into()));
        }
        match self.experiment {
            ExperimentKind::LatticeTwosample | ExperimentKind::MaternTwosample => {
                if self.b.is_none() {
                    return Err(CliError::Config(
                        "two-sample experiments need a [b] distribution".into(),
                    ));
                }
                if self.kernels.choices.is_empty() {
                    return Err(CliError::Config("kernels.choices: none selected".into()));
                }
            }
            ExperimentKind::Band => {
                if self.b.is_none() {
                    return Err(CliError::Config("band experiments need a [b] distribution".into()));
                }
                let band = self
                    .band
                    .as_ref()
                    .ok_or_else(|| CliError::Config("band experiments need a [band] section".into()))?;
                if band.grid_start > band.grid_end {
                    return Err(CliError::Config(format!(
                        "band.grid_start {} exceeds band.grid_end {}",
                        band.grid_start, band.grid_end
                    )));
                }
                if !(band.grid_radius.is_finite() && band.grid_radius > 0.0) {
                    return Err(CliError::Config("band.grid_radius: must be > 0".into()));
                }
            }
            ExperimentKind::StabilityAudit => {
                if self.audit.pairs == 0 || self.audit.mc_samples == 0 {
                    return Err(CliError::Config(
                        "audit.pairs and audit.mc_samples must be >= 1".into(),
                    ));
                }
                if self.a.lattice_spec().is_none() {
                    return Err(CliError::Config(
                        "stability audits need a lattice [a] distribution".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The published experiment sizes: lattice side 20, n = 50, m = 40,
    /// N = 1000, b = 10^4.
    pub fn apply_paper_scale(&mut self) {
        self.stats.samples = 50;
        self.stats.subsample = 40;
        self.stats.trials = 1000;
        self.stats.replicates = 10_000;
        for dist in [Some(&mut self.a), self.b.as_mut()].into_iter().flatten() {
            if let DistributionSpec::Lattice { side, .. } = dist {
                *side = 20;
            }
        }
    }

    /// Hex digest of the canonical JSON serialization; every output file
    /// carries it.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
