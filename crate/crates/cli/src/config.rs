//! JSON run configuration. Unknown keys anywhere are rejected.

use std::path::PathBuf;

use impulse_front::analytic::{ClimateInputs, Direction, SavannahInputs, StreamInputs};
use impulse_front::hybrid::FitKind;
use impulse_front::model::{validate, GrowthSpec, KernelSpec, ModelParams, StageMapSpec, Violation};
use impulse_front::season::SeasonConfig;
use impulse_front::{Matrix, Vector};
use serde::Deserialize;

use crate::exit::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub numerics: Numerics,
    pub task: Task,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Scalar `d` (meaning `d I`) or the full matrix by rows.
    pub diffusion: MatrixInput,
    /// Length fixes the dimension (1 or 2).
    pub advection: Vec<f64>,
    pub growth: GrowthConfig,
    pub map: MapConfig,
    #[serde(default)]
    pub kernel: Option<KernelConfig>,
    /// Requested positive equilibrium (Ricker runs are clamped to `1/beta`).
    #[serde(default)]
    pub pi1: Option<f64>,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(untagged)]
pub enum MatrixInput {
    Scalar(f64),
    Rows(Vec<Vec<f64>>),
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GrowthConfig {
    Linear { rate: f64 },
    Quadratic { rate: f64, gamma: f64 },
    Logistic { r: f64 },
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapConfig {
    Linear { alpha: f64 },
    Ricker { beta: f64 },
    BevertonHolt { lambda: f64 },
    Skellam { alpha: f64, beta: f64 },
}

#[derive(Debug, Deserialize, Clone)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    Gaussian { mean: Vec<f64>, b: MatrixInput },
    PointMass,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    pub spacing: f64,
    pub generations: usize,
    pub substeps: usize,
    pub half_width: Option<f64>,
    pub dirichlet_spacing: f64,
    pub dirichlet_steps: usize,
    /// Front threshold as a density; defaults to `pi1/2`.
    pub threshold: Option<f64>,
    pub burn_in: f64,
    pub fit: FitChoice,
    /// Relative amplitude of multiplicative noise on the initial data.
    pub jitter: f64,
    pub classification_generations: usize,
    pub oracle_iterations: usize,
}

impl Default for Numerics {
    fn default() -> Self {
        let season = SeasonConfig::<f64>::default();
        Self {
            spacing: 0.05,
            generations: 30,
            substeps: season.substeps,
            half_width: None,
            dirichlet_spacing: season.dirichlet_spacing,
            dirichlet_steps: season.dirichlet_steps,
            threshold: None,
            burn_in: 0.4,
            fit: FitChoice::LogCorrected,
            jitter: 0.0,
            classification_generations: 200,
            oracle_iterations: 600,
        }
    }
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FitChoice {
    Linear,
    LogCorrected,
}

impl Numerics {
    pub fn season(&self) -> SeasonConfig<f64> {
        SeasonConfig {
            substeps: self.substeps,
            half_width: self.half_width,
            dirichlet_spacing: self.dirichlet_spacing,
            dirichlet_steps: self.dirichlet_steps,
            ..SeasonConfig::default()
        }
    }

    pub fn fit(&self) -> FitKind {
        match self.fit {
            FitChoice::Linear => FitKind::Linear,
            FitChoice::LogCorrected => FitKind::LogCorrected,
        }
    }

    fn check(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(format!("numerics: {m}")));
        if !(self.spacing > 0.0 && self.dirichlet_spacing > 0.0) {
            return bad("spacings must be positive");
        }
        if self.substeps == 0 || self.dirichlet_steps == 0 {
            return bad("step counts must be at least 1");
        }
        if !(0.0..1.0).contains(&self.burn_in) {
            return bad("burn_in must lie in [0, 1)");
        }
        if !(0.0..1.0).contains(&self.jitter) {
            return bad("jitter must lie in [0, 1)");
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct Directions {
    /// Explicit vectors; normalized before use.
    pub directions: Option<Vec<Vec<f64>>>,
    /// Angles in degrees (2D only).
    pub angles_deg: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Speed(SpeedTask),
    CriticalDomain(CriticalTask),
    Ray(RayTask),
    Simulate(SimulateTask),
    Oracle(OracleTask),
    Scenario(ScenarioTask),
    Sweep(SweepTask),
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Speed(_) => "speed",
            Task::CriticalDomain(_) => "critical-domain",
            Task::Ray(_) => "ray",
            Task::Simulate(_) => "simulate",
            Task::Oracle(_) => "oracle",
            Task::Scenario(_) => "scenario",
            Task::Sweep(_) => "sweep",
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeedTask {
    #[serde(flatten)]
    pub directions: Directions,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "yes")]
    pub simulate: bool,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ShapeChoice {
    Interval,
    Square,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalTask {
    #[serde(default)]
    pub shape: Option<ShapeChoice>,
    #[serde(default)]
    pub simulate: bool,
    #[serde(default)]
    pub bracket: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayTask {
    #[serde(default)]
    pub angles_deg: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateTask {
    #[serde(flatten)]
    pub directions: Directions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleTask {
    #[serde(flatten)]
    pub directions: Directions,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioTask {
    Climate(ClimateConfig),
    Stream(StreamConfig),
    Savannah(SavannahConfig),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClimateConfig {
    pub d: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub l1: f64,
    pub l2: f64,
    #[serde(default)]
    pub shift: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamConfig {
    pub d: f64,
    pub sigma2: f64,
    pub r: f64,
    pub q: f64,
    pub mu: f64,
    pub lambda: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SavannahConfig {
    pub r: f64,
    pub s: f64,
    pub a11: f64,
    pub a22: f64,
    #[serde(default)]
    pub q1: f64,
    #[serde(default)]
    pub q2: f64,
}

impl From<&ClimateConfig> for ClimateInputs<f64> {
    fn from(c: &ClimateConfig) -> Self {
        Self { d: c.d, lambda: c.lambda, gamma: c.gamma, l1: c.l1, l2: c.l2, shift: c.shift }
    }
}

impl From<&StreamConfig> for StreamInputs<f64> {
    fn from(c: &StreamConfig) -> Self {
        Self { d: c.d, sigma2: c.sigma2, r: c.r, q: c.q, mu: c.mu, lambda: c.lambda }
    }
}

impl From<&SavannahConfig> for SavannahInputs<f64> {
    fn from(c: &SavannahConfig) -> Self {
        Self { r: c.r, s: c.s, a11: c.a11, a22: c.a22, q1: c.q1, q2: c.q2 }
    }
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Advection magnitude along `axis`; speeds are reported against the flow.
    Q,
    /// Isotropic diffusion coefficient.
    D,
    /// Linear growth rate `f'(0)` (or logistic `r`).
    R,
    /// Interval (or square) side length for simulated persistence.
    Length,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepTask {
    pub parameter: SweepParameter,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub range: Option<Range>,
    #[serde(default)]
    pub axis: Option<Vec<f64>>,
}

impl SweepTask {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let pts = match (&self.values, &self.range) {
            (Some(v), None) => v.clone(),
            (None, Some(r)) if r.steps >= 2 => {
                (0..r.steps).map(|k| r.from + (r.to - r.from) * k as f64 / (r.steps - 1) as f64).collect()
            }
            (None, Some(r)) if r.steps == 1 => vec![r.from],
            (None, Some(_)) => Vec::new(),
            (Some(_), Some(_)) => return Err(CliError::Config("sweep: give either values or range, not both".into())),
            (None, None) => return Err(CliError::Config("sweep: values or range required".into())),
        };
        if pts.is_empty() {
            return Err(CliError::Config("sweep: empty range".into()));
        }
        if pts.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config("sweep: values must be finite".into()));
        }
        Ok(pts)
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
        cfg.numerics.check()?;
        Ok(cfg)
    }

    /// Model parameters, validated against the standing assumptions.
    pub fn params(&self) -> Result<ModelParams<f64>, CliError> {
        let m = self.model.as_ref().ok_or_else(|| CliError::Config(format!("task {} needs a model block", self.task.name())))?;
        let p = m.to_params()?;
        let mut fatal = Vec::new();
        for v in validate(&p) {
            match v {
                Violation::MonotoneRange { .. } => log::warn!("{v}"),
                _ => fatal.push(v.to_string()),
            }
        }
        if !fatal.is_empty() {
            return Err(CliError::Config(format!("model violates assumptions: {}", fatal.join("; "))));
        }
        Ok(p)
    }
}

fn matrix(input: &MatrixInput, n: usize, what: &str) -> Result<Matrix<f64>, CliError> {
    match input {
        MatrixInput::Scalar(d) => Ok(Matrix::scalar(n, *d)),
        MatrixInput::Rows(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Config(format!("{what} must be {n}x{n}")));
            }
            Matrix::from_rows(rows).map_err(|e| CliError::Config(format!("{what}: {e}")))
        }
    }
}

fn vector(v: &[f64], what: &str) -> Result<Vector<f64>, CliError> {
    Vector::from_slice(v).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

impl ModelConfig {
    pub fn to_params(&self) -> Result<ModelParams<f64>, CliError> {
        let n = self.advection.len();
        if !(n == 1 || n == 2) {
            return Err(CliError::Config(format!("advection must have 1 or 2 components, got {n}")));
        }
        let growth = match self.growth {
            GrowthConfig::Linear { rate } => GrowthSpec::Linear { rate },
            GrowthConfig::Quadratic { rate, gamma } => GrowthSpec::Quadratic { rate, gamma },
            GrowthConfig::Logistic { r } => GrowthSpec::Logistic { r },
        };
        let map = match self.map {
            MapConfig::Linear { alpha } => StageMapSpec::Linear { alpha },
            MapConfig::Ricker { beta } => StageMapSpec::Ricker { beta },
            MapConfig::BevertonHolt { lambda } => StageMapSpec::BevertonHolt { lambda },
            MapConfig::Skellam { alpha, beta } => StageMapSpec::Skellam { alpha, beta },
        };
        let mut p = ModelParams::new(matrix(&self.diffusion, n, "diffusion")?, vector(&self.advection, "advection")?, growth, map);
        if let Some(k) = &self.kernel {
            p = p.with_kernel(match k {
                KernelConfig::Gaussian { mean, b } => {
                    if mean.len() != n {
                        return Err(CliError::Config(format!("kernel mean must have {n} components")));
                    }
                    KernelSpec::gaussian(vector(mean, "kernel mean")?, matrix(b, n, "kernel b")?)
                }
                KernelConfig::PointMass => KernelSpec::PointMass,
            });
        }
        if let Some(pi1) = self.pi1 {
            p = p.with_pi1(pi1);
        }
        Ok(p)
    }
}

/// Directions requested by a task, defaulting to both ways along each axis.
pub fn directions(spec: &Directions, dim: usize) -> Result<Vec<Direction<f64>>, CliError> {
    let out: Result<Vec<_>, CliError> = match (&spec.directions, &spec.angles_deg) {
        (Some(_), Some(_)) => Err(CliError::Config("give either directions or angles_deg, not both".into())),
        (Some(v), None) => v
            .iter()
            .map(|d| {
                if d.len() != dim {
                    return Err(CliError::Config(format!("direction {d:?} must have {dim} components")));
                }
                Direction::normalize(vector(d, "direction")?).map_err(|e| CliError::Config(format!("direction: {e}")))
            })
            .collect(),
        (None, Some(a)) if dim == 2 => Ok(a.iter().map(|t| Direction::from_angle(t.to_radians())).collect()),
        (None, Some(_)) => Err(CliError::Config("angles_deg needs a 2D model".into())),
        (None, None) if dim == 1 => Ok(vec![Direction::along_line(1.0), Direction::along_line(-1.0)]),
        (None, None) => Ok([0.0f64, 90.0, 180.0, 270.0].iter().map(|t| Direction::from_angle(t.to_radians())).collect()),
    };
    let out = out?;
    if out.is_empty() {
        return Err(CliError::Config("no directions requested".into()));
    }
    Ok(out)
}
