//! Monte Carlo checks of uniform convergence on finite-support distributions.
//!
//! On a finite support both `L_D(h)` and `L_S(h)` depend on `h` only through
//! its trace on the support, so the supremum over the whole class is a
//! maximum over its (finite) trace set.

use crate::class::{EnumerationOptions, HypothesisClass, TraceSet};
use crate::dichotomy::{PointSet, Trace};
use crate::{math, rng, CoreError, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

/// Tolerance on the total probability mass.
pub const MASS_TOL: f64 = 1e-12;

/// A distribution on finitely many points together with their true labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    support: PointSet,
    probabilities: Vec<f64>,
    labels: Trace,
}

impl DiscreteDistribution {
    pub fn new(support: PointSet, probabilities: Vec<f64>, labels: Trace) -> Result<Self> {
        if support.is_empty() {
            return Err(CoreError::Distribution("empty support".into()));
        }
        if probabilities.len() != support.len() {
            return Err(CoreError::LengthMismatch { expected: support.len(), found: probabilities.len() });
        }
        if labels.len() != support.len() {
            return Err(CoreError::LengthMismatch { expected: support.len(), found: labels.len() });
        }
        if let Some(&p) = probabilities.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(CoreError::Distribution(format!("probability {p} is not a nonnegative real")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(CoreError::Distribution(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { support, probabilities, labels })
    }

    pub fn uniform(support: PointSet, labels: Trace) -> Result<Self> {
        let n = support.len();
        if n == 0 {
            return Err(CoreError::Distribution("empty support".into()));
        }
        Self::new(support, vec![1.0 / n as f64; n], labels)
    }

    pub fn support(&self) -> &PointSet {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn labels(&self) -> &Trace {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `k` i.i.d. draws (with replacement).
    pub fn draw<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Result<Sample> {
        let index = WeightedIndex::new(&self.probabilities)
            .map_err(|e| CoreError::Distribution(format!("cannot sample: {e}")))?;
        let mut counts = vec![0u64; self.len()];
        for _ in 0..k {
            counts[index.sample(rng)] += 1;
        }
        Ok(Sample { counts, size: k as u64 })
    }
}

/// A multiset of support indices, stored as multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    counts: Vec<u64>,
    size: u64,
}

impl Sample {
    pub fn from_indices(support_len: usize, indices: &[usize]) -> Result<Self> {
        let mut counts = vec![0u64; support_len];
        for &i in indices {
            if i >= support_len {
                return Err(CoreError::Domain(format!("index {i} outside a support of {support_len} points")));
            }
            counts[i] += 1;
        }
        Ok(Self { counts, size: indices.len() as u64 })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn size(&self) -> u64 {
        self.size
    }
}

/// Mass of the support points where `t` disagrees with the true labels.
pub fn true_loss(t: &Trace, d: &DiscreteDistribution) -> Result<f64> {
    if t.len() != d.len() {
        return Err(CoreError::LengthMismatch { expected: d.len(), found: t.len() });
    }
    Ok(t.iter().zip(d.labels.iter()).zip(&d.probabilities).filter(|((a, b), _)| a != b).map(|(_, p)| *p).sum())
}

/// Fraction of `s` on which `t` disagrees with `labels`.
pub fn empirical_loss(t: &Trace, labels: &Trace, s: &Sample) -> Result<f64> {
    if t.len() != labels.len() {
        return Err(CoreError::LengthMismatch { expected: labels.len(), found: t.len() });
    }
    if s.counts.len() != t.len() {
        return Err(CoreError::LengthMismatch { expected: t.len(), found: s.counts.len() });
    }
    if s.size == 0 {
        return Err(CoreError::EmptySample);
    }
    let wrong: u64 = t.iter().zip(labels.iter()).zip(&s.counts).filter(|((a, b), _)| a != b).map(|(_, c)| *c).sum();
    Ok(wrong as f64 / s.size as f64)
}

/// How the supremum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupMethod {
    /// Over every trace of the class: the value is the supremum.
    ExactTraceEnumeration,
    /// Over sampled traces: a lower bound on the supremum.
    SampledHypotheses,
}

impl SupMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ExactTraceEnumeration => "exact_trace_enumeration",
            Self::SampledHypotheses => "sampled_hypotheses",
        }
    }
}

/// `max_t |true_loss(t) - empirical_loss(t)|` over a trace set on the support.
pub fn sup_deviation_exact(traces: &TraceSet, d: &DiscreteDistribution, s: &Sample) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for t in &traces.traces {
        sup = sup.max((true_loss(t, d)? - empirical_loss(t, &d.labels, s)?).abs());
    }
    Ok(sup)
}

/// Supremum over a whole class: enumerates its traces on the support first.
pub fn sup_deviation(
    class: &HypothesisClass,
    d: &DiscreteDistribution,
    s: &Sample,
    opts: &EnumerationOptions,
) -> Result<(f64, SupMethod)> {
    let traces = class.traces_on(&d.support, opts)?;
    Ok((sup_deviation_exact(&traces, d, s)?, method_of(&traces)))
}

fn method_of(traces: &TraceSet) -> SupMethod {
    if traces.exact {
        SupMethod::ExactTraceEnumeration
    } else {
        SupMethod::SampledHypotheses
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UcExperimentResult {
    pub k: usize,
    pub eps: f64,
    pub trials: usize,
    /// Trials whose supremum exceeded `eps`.
    pub failures: usize,
    pub empirical_rate: f64,
    pub seed: u64,
    pub sup_method: SupMethod,
    pub mean_sup: f64,
    /// Standard error of `mean_sup`.
    pub std_err: f64,
}

/// A prepared experiment: the trace set and each trace's true loss are
/// computed once, and trials can then run in any order (or in parallel).
#[derive(Debug, Clone)]
pub struct UcExperiment {
    errors: Vec<Vec<usize>>,
    true_losses: Vec<f64>,
    distribution: DiscreteDistribution,
    method: SupMethod,
    eps: f64,
    k: usize,
}

impl UcExperiment {
    pub fn new(
        class: &HypothesisClass,
        d: &DiscreteDistribution,
        eps: f64,
        k: usize,
        opts: &EnumerationOptions,
    ) -> Result<Self> {
        let traces = class.traces_on(&d.support, opts)?;
        Self::from_traces(&traces, d, eps, k)
    }

    pub fn from_traces(traces: &TraceSet, d: &DiscreteDistribution, eps: f64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(CoreError::Domain("k must be >= 1".into()));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(CoreError::Domain(format!("eps must be positive, got {eps}")));
        }
        let mut errors = Vec::with_capacity(traces.len());
        let mut true_losses = Vec::with_capacity(traces.len());
        for t in &traces.traces {
            true_losses.push(true_loss(t, d)?);
            errors.push((0..t.len()).filter(|&i| t.get(i) != d.labels.get(i)).collect());
        }
        Ok(Self { errors, true_losses, distribution: d.clone(), method: method_of(traces), eps, k })
    }

    pub fn sup_method(&self) -> SupMethod {
        self.method
    }

    /// Supremum deviation of trial `trial`, drawn from stream `(seed, trial)`.
    pub fn trial(&self, seed: u64, trial: u64) -> Result<f64> {
        let mut rng = rng::stream(seed, &[trial]);
        let s = self.distribution.draw(self.k, &mut rng)?;
        let k = self.k as f64;
        let mut sup: f64 = 0.0;
        for (wrong, &l) in self.errors.iter().zip(&self.true_losses) {
            let emp = wrong.iter().map(|&i| s.counts[i]).sum::<u64>() as f64 / k;
            sup = sup.max((l - emp).abs());
        }
        Ok(sup)
    }

    /// Folds per-trial suprema (in trial order) into a result.
    pub fn summarize(&self, seed: u64, sups: &[f64]) -> Result<UcExperimentResult> {
        let trials = sups.len();
        if trials == 0 {
            return Err(CoreError::Domain("trials must be >= 1".into()));
        }
        let failures = sups.iter().filter(|&&s| s > self.eps).count();
        let n = trials as f64;
        let mean = sups.iter().sum::<f64>() / n;
        let std_err = if trials > 1 {
            let var = sups.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
            math::sqrt(var / n)
        } else {
            0.0
        };
        Ok(UcExperimentResult {
            k: self.k,
            eps: self.eps,
            trials,
            failures,
            empirical_rate: failures as f64 / n,
            seed,
            sup_method: self.method,
            mean_sup: mean,
            std_err,
        })
    }

    pub fn run(&self, trials: usize, seed: u64) -> Result<UcExperimentResult> {
        let sups = (0..trials as u64).map(|t| self.trial(seed, t)).collect::<Result<Vec<_>>>()?;
        self.summarize(seed, &sups)
    }
}

/// Draws `trials` samples of size `k` and counts those whose supremum
/// deviation exceeds `eps`. Deterministic in `seed`.
pub fn run_uc_experiment(
    class: &HypothesisClass,
    d: &DiscreteDistribution,
    eps: f64,
    k: usize,
    trials: usize,
    seed: u64,
    opts: &EnumerationOptions,
) -> Result<UcExperimentResult> {
    if trials == 0 {
        return Err(CoreError::Domain("trials must be >= 1".into()));
    }
    UcExperiment::new(class, d, eps, k, opts)?.run(trials, seed)
}
