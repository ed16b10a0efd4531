//! Experiment configuration: one JSON document naming the command, a seed,
//! and the command's parameters. Every omitted parameter takes its default.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use wh_core::gabor::TestSignal;
use wh_core::numerics::{Grid1D, PhaseSpaceGrid};
use wh_core::stellar::PlanarPoint;

use crate::error::{validation, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    GroupCheck,
    Gabor,
    Cylinder,
    Quantize,
    Stellar,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::GroupCheck => "group-check",
            Command::Gabor => "gabor",
            Command::Cylinder => "cylinder",
            Command::Quantize => "quantize",
            Command::Stellar => "stellar",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Option<Command>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub parameters: serde_json::Map<String, serde_json::Value>,
    /// Directory against which relative paths in `parameters` resolve.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut config: Self = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("invalid config {}: {e}", path.display())))?;
        config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(config)
    }

    /// Typed parameters for the command, defaults filled in.
    pub fn parameters<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        serde_json::from_value(serde_json::Value::Object(self.parameters.clone()))
            .map_err(|e| CliError::Validation(format!("invalid parameters: {e}")))
    }

    pub fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

/// `count` nodes from `lo` (included) to `hi` (excluded).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisSpec {
    pub const fn new(lo: f64, hi: f64, count: usize) -> Self {
        Self { lo, hi, count }
    }

    pub fn grid(&self) -> Result<Grid1D, CliError> {
        Grid1D::spanning(self.lo, self.hi, self.count).map_err(validation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub omega: AxisSpec,
    pub b: AxisSpec,
}

impl LatticeSpec {
    pub const fn square(lo: f64, hi: f64, count: usize) -> Self {
        Self {
            omega: AxisSpec::new(lo, hi, count),
            b: AxisSpec::new(lo, hi, count),
        }
    }

    pub fn grid(&self) -> Result<PhaseSpaceGrid, CliError> {
        Ok(PhaseSpaceGrid::new(self.omega.grid()?, self.b.grid()?))
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{name} must be positive, got {v}")))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupCheckParams {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaborParams {
    pub signal: TestSignal,
    pub probe_width: f64,
    pub time: AxisSpec,
    pub lattice: LatticeSpec,
    /// Displacements `(ω₀, b₀)` at which covariance is measured.
    pub covariance: Vec<(f64, f64)>,
}

impl Default for GaborParams {
    fn default() -> Self {
        Self {
            signal: TestSignal::TwoBump,
            probe_width: 1.0,
            time: AxisSpec::new(-20.0, 20.0, 1024),
            lattice: LatticeSpec::square(-16.0, 16.0, 256),
            covariance: vec![(1.0, 1.0), (2.0, -0.5)],
        }
    }
}

impl GaborParams {
    pub fn validate(&self) -> Result<(), CliError> {
        positive("probe_width", self.probe_width)?;
        self.time.grid()?;
        self.lattice.grid()?;
        Ok(())
    }
}

/// Displaced von Mises window used as the analysed circular signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircularSignalSpec {
    pub lambda: f64,
    pub m: i64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CylinderParams {
    pub lambda: f64,
    pub n_gamma: usize,
    pub n_theta: Option<usize>,
    pub m_max: Option<usize>,
    pub signal: CircularSignalSpec,
    /// Random `(m, θ, m′, θ′)` tuples for the reproducing-kernel check.
    pub kernel_samples: usize,
}

impl Default for CylinderParams {
    fn default() -> Self {
        Self {
            lambda: 3.0,
            n_gamma: 128,
            n_theta: None,
            m_max: None,
            signal: CircularSignalSpec { lambda: 1.5, m: 2, theta: 0.7 },
            kernel_samples: 100,
        }
    }
}

impl CylinderParams {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, l) in [("lambda", self.lambda), ("signal.lambda", self.signal.lambda)] {
            if !(0.0..=wh_core::cylinder::MAX_CONCENTRATION).contains(&l) {
                return Err(CliError::Validation(format!(
                    "{name} must lie in [0, {}], got {l}",
                    wh_core::cylinder::MAX_CONCENTRATION
                )));
            }
        }
        if self.n_gamma < 8 {
            return Err(CliError::Validation(format!("n_gamma must be at least 8, got {}", self.n_gamma)));
        }
        if let Some(n) = self.n_theta {
            if n < 2 {
                return Err(CliError::Validation(format!("n_theta must be at least 2, got {n}")));
            }
        }
        if let Some(m) = self.m_max {
            if 2 * m >= self.n_gamma {
                return Err(CliError::Validation(format!(
                    "m_max must be below n_gamma/2 = {}, got {m}",
                    self.n_gamma / 2
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WeightSpec {
    Gaussian { var_omega: f64, var_b: f64, omega0: f64, b0: f64 },
    Par { a: f64, r: f64 },
    /// Real grid CSV in the tool's own layout.
    Csv { path: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePair {
    pub a: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuantizeParams {
    pub weight: WeightSpec,
    /// Rescale the weight to unit mass before quantizing.
    pub normalize: bool,
    pub probe_width: f64,
    pub time: AxisSpec,
    pub lattice: LatticeSpec,
    pub portrait: Option<ProbePair>,
}

impl Default for QuantizeParams {
    fn default() -> Self {
        Self {
            weight: WeightSpec::Gaussian { var_omega: 1.0, var_b: 1.0, omega0: 0.0, b0: 0.0 },
            normalize: true,
            probe_width: 1.0,
            time: AxisSpec::new(-12.0, 12.0, 256),
            lattice: LatticeSpec::square(-8.0, 8.0, 64),
            portrait: None,
        }
    }
}

impl QuantizeParams {
    pub fn validate(&self) -> Result<(), CliError> {
        positive("probe_width", self.probe_width)?;
        self.time.grid()?;
        self.lattice.grid()?;
        match &self.weight {
            WeightSpec::Gaussian { var_omega, var_b, .. } => {
                positive("weight.var_omega", *var_omega)?;
                positive("weight.var_b", *var_b)?;
            }
            WeightSpec::Par { a, r } => {
                positive("weight.a", *a)?;
                positive("weight.r", *r)?;
            }
            WeightSpec::Csv { .. } => {}
        }
        if let Some(p) = self.portrait {
            positive("portrait.a", p.a)?;
            positive("portrait.r", p.r)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    Pentagon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StellarConfig {
    pub fixture: Option<Fixture>,
    /// JSON file holding `[{"re": .., "im": ..}, ...]`.
    pub zeros_path: Option<String>,
    pub zeros: Option<Vec<PlanarPoint>>,
    pub s: f64,
    pub probe_a: f64,
    pub probe_r: f64,
    pub lattice: LatticeSpec,
    pub time: AxisSpec,
    pub rel_threshold: f64,
    pub match_cutoff: f64,
    pub symmetry_order: u32,
    /// Also build the density operator and report its diagnostics.
    pub quantize: bool,
}

impl Default for StellarConfig {
    fn default() -> Self {
        Self {
            fixture: None,
            zeros_path: None,
            zeros: None,
            s: 0.945,
            probe_a: 2.0,
            probe_r: 2.0,
            lattice: LatticeSpec::square(-32.0, 32.0, 512),
            time: AxisSpec::new(-40.0, 40.0, 512),
            rel_threshold: 1e-2,
            match_cutoff: 0.5,
            symmetry_order: 5,
            quantize: false,
        }
    }
}

impl StellarConfig {
    pub fn sources(&self) -> usize {
        [self.fixture.is_some(), self.zeros_path.is_some(), self.zeros.is_some()]
            .iter()
            .filter(|x| **x)
            .count()
    }
}
