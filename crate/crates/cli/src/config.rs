//! Versioned JSON files: hypothesis classes, distributions, run configs.

use crate::error::{CliError, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use vcdens_core::class::{Refinement, WeightSampler};
use vcdens_core::dichotomy::{FitPolicy, GrowthMethod, PointSet, Trace};
use vcdens_core::hypothesis::{ActivationKind, ActivationSpec, BaselineClass, Interval, LayerSpec, NetworkSpec};
use vcdens_core::rng::DEFAULT_SEED;
use vcdens_core::uc::DiscreteDistribution;
use vcdens_core::HypothesisClass;

pub const SCHEMA_VERSION: u32 = 1;

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(CliError::Schema(format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainConfig {
    Points(Vec<Vec<f64>>),
    /// The points `0, 1, ..., n-1` on the real line.
    IntegerLine(usize),
}

impl DomainConfig {
    pub fn build(&self) -> Result<PointSet> {
        Ok(match self {
            Self::Points(p) => PointSet::new(p.clone())?,
            Self::IntegerLine(n) => PointSet::new((0..*n).map(|i| vec![i as f64]).collect())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivationConfig {
    pub kind: String,
    /// Polynomial coefficients, constant term first.
    #[serde(default)]
    pub params: Vec<f64>,
    pub restriction: Option<[f64; 2]>,
    #[serde(default)]
    pub clamp: bool,
}

impl ActivationConfig {
    pub fn build(&self) -> Result<ActivationSpec> {
        let kind = match self.kind.as_str() {
            "threshold" => ActivationKind::Threshold,
            "logistic" => ActivationKind::Logistic,
            "tanh" => ActivationKind::Tanh,
            "relu" => ActivationKind::Relu,
            "identity" => ActivationKind::Identity,
            "polynomial" => ActivationKind::Polynomial(self.params.clone()),
            other => return Err(CliError::Schema(format!("unknown activation kind `{other}`"))),
        };
        if !self.params.is_empty() && !matches!(kind, ActivationKind::Polynomial(_)) {
            return Err(CliError::Schema(format!("activation `{}` takes no params", self.kind)));
        }
        let restriction = self.restriction.map(|[lo, hi]| Interval::new(lo, hi)).transpose()?;
        Ok(ActivationSpec::new(kind, restriction, self.clamp)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    /// Inputs per node; checked against the previous layer's width.
    pub fan_in: usize,
    #[serde(default = "one")]
    pub width: usize,
    pub activation: ActivationConfig,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub low: f64,
    pub high: f64,
    pub refine_radius: Option<f64>,
    pub refine_per_trace: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassKind {
    LinearThreshold { dim: usize },
    UnionOfPoints { capacity: usize, domain: DomainConfig },
    ExplicitFinite { domain: DomainConfig, traces: Vec<String> },
    Network { input_dim: usize, layers: Vec<LayerConfig>, sampler: Option<SamplerConfig> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFile {
    pub schema_version: u32,
    pub id: String,
    #[serde(flatten)]
    pub class: ClassKind,
}

impl ClassFile {
    pub fn load(path: &Path) -> Result<Self> {
        let f: Self = read_json(path)?;
        check_version(f.schema_version)?;
        Ok(f)
    }

    pub fn build(&self) -> Result<HypothesisClass> {
        Ok(match &self.class {
            ClassKind::LinearThreshold { dim } => HypothesisClass::Baseline(BaselineClass::linear_threshold(*dim)?),
            ClassKind::UnionOfPoints { capacity, domain } => {
                if *capacity == 0 {
                    return Err(CliError::Schema("capacity must be >= 1".into()));
                }
                HypothesisClass::Baseline(BaselineClass::union_of_points(*capacity, domain.build()?))
            }
            ClassKind::ExplicitFinite { domain, traces } => {
                let traces = traces.iter().map(|t| Trace::parse(t)).collect::<Result<Vec<_>, _>>()?;
                HypothesisClass::Baseline(BaselineClass::explicit_finite(domain.build()?, traces)?)
            }
            ClassKind::Network { input_dim, layers, sampler } => {
                let mut prev = *input_dim;
                let mut built = Vec::with_capacity(layers.len());
                for (i, l) in layers.iter().enumerate() {
                    if l.fan_in != prev {
                        return Err(CliError::Schema(format!("layer {i}: fan_in {} but the previous width is {prev}", l.fan_in)));
                    }
                    built.push(LayerSpec::uniform(l.width, l.activation.build()?)?);
                    prev = l.width;
                }
                let spec = NetworkSpec::new(*input_dim, built)?;
                let sampler = match sampler {
                    None => WeightSampler::default(),
                    Some(s) => {
                        let refine = match (s.refine_radius, s.refine_per_trace) {
                            (Some(radius), Some(per_trace)) => Some(Refinement { radius, per_trace }),
                            (None, None) => None,
                            _ => {
                                return Err(CliError::Schema(
                                    "refine_radius and refine_per_trace must be given together".into(),
                                ))
                            }
                        };
                        WeightSampler::new(s.low, s.high, refine)?
                    }
                };
                HypothesisClass::network(spec, sampler)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub schema_version: u32,
    pub support: Vec<Vec<f64>>,
    /// Omitted for the uniform distribution.
    pub probabilities: Option<Vec<f64>>,
    /// One `0`/`1` per support point.
    pub labels: String,
}

impl DistributionFile {
    pub fn load(path: &Path) -> Result<Self> {
        let f: Self = read_json(path)?;
        check_version(f.schema_version)?;
        Ok(f)
    }

    pub fn build(&self) -> Result<DiscreteDistribution> {
        let support = PointSet::new(self.support.clone())?;
        let labels = Trace::parse(&self.labels)?;
        Ok(match &self.probabilities {
            None => DiscreteDistribution::uniform(support, labels)?,
            Some(p) => DiscreteDistribution::new(support, p.clone(), labels)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MethodConfig {
    #[default]
    Exact,
    Arrangement,
    Sampled,
    Oracle,
}

impl MethodConfig {
    pub fn to_method(self, budget: usize) -> GrowthMethod {
        match self {
            Self::Exact => GrowthMethod::Exact,
            Self::Arrangement => GrowthMethod::Arrangement,
            Self::Sampled => GrowthMethod::Sampled { budget },
            Self::Oracle => GrowthMethod::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FitConfig {
    #[default]
    UpperHalf,
    All,
}

pub fn fit_policy(fit: FitConfig, n_min: Option<usize>, n_max: Option<usize>) -> Result<FitPolicy> {
    match (n_min, n_max) {
        (None, None) => Ok(match fit {
            FitConfig::UpperHalf => FitPolicy::UpperHalf,
            FitConfig::All => FitPolicy::All,
        }),
        (Some(n_min), Some(n_max)) => Ok(FitPolicy::Range { n_min, n_max }),
        _ => Err(CliError::Schema("fit_n_min and fit_n_max must be given together".into())),
    }
}

fn default_budget() -> usize {
    20_000
}
fn default_random_draws() -> usize {
    4
}
fn default_true() -> bool {
    true
}
fn default_max_d() -> usize {
    8
}
fn default_random_sets() -> usize {
    8
}
fn default_trials() -> usize {
    200
}
fn default_c() -> f64 {
    1.0
}
fn default_c_prime() -> f64 {
    2.0
}
fn default_c_hat() -> f64 {
    64.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthArgs {
    pub class: PathBuf,
    pub n: Vec<usize>,
    #[serde(default)]
    pub method: MethodConfig,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Random point sets per `n`, on top of the structured one.
    #[serde(default = "default_random_draws")]
    pub random_draws: usize,
    #[serde(default = "default_true")]
    pub structured: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    Bounds {
        m: Vec<usize>,
        eps: Vec<f64>,
        delta: Vec<f64>,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(default = "default_c_prime")]
        c_prime: f64,
        #[serde(default = "default_c_hat")]
        c_hat: f64,
    },
    Growth(GrowthArgs),
    Vcdim {
        class: PathBuf,
        #[serde(default = "default_max_d")]
        max_d: usize,
        #[serde(default = "default_random_sets")]
        random_sets: usize,
        #[serde(default = "default_budget")]
        budget: usize,
    },
    Density {
        #[serde(flatten)]
        growth: GrowthArgs,
        #[serde(default)]
        fit: FitConfig,
        fit_n_min: Option<usize>,
        fit_n_max: Option<usize>,
    },
    Ucheck {
        class: PathBuf,
        distribution: PathBuf,
        eps: f64,
        delta: f64,
        /// Sample size; `k_elementary(m, eps, delta)` when omitted.
        k: Option<usize>,
        /// Exponent for the default `k`; the class's parameter count when omitted.
        m: Option<usize>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default = "default_budget")]
        budget: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Bounds { .. } => "bounds",
            Self::Growth(_) => "growth",
            Self::Vcdim { .. } => "vcdim",
            Self::Density { .. } => "density",
            Self::Ucheck { .. } => "ucheck",
        }
    }
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(flatten)]
    pub command: Command,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Worker threads; `None` runs on the calling thread.
    pub threads: Option<usize>,
    /// Output directory for CSV files.
    pub out: Option<PathBuf>,
    /// Also write `plot.csv`.
    #[serde(default)]
    pub plot: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, seed: DEFAULT_SEED, threads: None, out: None, plot: false }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let c: Self = read_json(path)?;
        check_version(c.schema_version)?;
        Ok(c)
    }

    /// Relative class and distribution paths are taken relative to `base`.
    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match &mut self.command {
            Command::Growth(g) | Command::Density { growth: g, .. } => fix(&mut g.class),
            Command::Vcdim { class, .. } => fix(class),
            Command::Ucheck { class, distribution, .. } => {
                fix(class);
                fix(distribution);
            }
            Command::Bounds { .. } => {}
        }
    }
}
