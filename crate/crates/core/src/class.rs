//! Hypothesis classes as seen by the counting and uniform-convergence code:
//! either a network architecture with a weight sampler, or a baseline class.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::dichotomy::{for_each_combination, ltf_traces, sample_traces, LtfCaps, PointSet, Trace};
use crate::hypothesis::{BaselineClass, NetworkSpec};
use crate::rng::DEFAULT_SEED;
use crate::{CoreError, Result};

/// Upper limit on explicitly materialized trace sets.
pub const MAX_ENUMERATED_TRACES: usize = 1 << 20;

/// Local search around weights that produced a new trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    /// Half-width of the uniform perturbation box, per coordinate.
    pub radius: f64,
    /// Perturbations spent around each newly found trace.
    pub per_trace: usize,
}

/// Draws weight vectors componentwise uniform on `[low, high]`, optionally
/// interleaved with local perturbations (see [`Refinement`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSampler {
    pub low: f64,
    pub high: f64,
    pub refine: Option<Refinement>,
}

impl WeightSampler {
    pub fn new(low: f64, high: f64, refine: Option<Refinement>) -> Result<Self> {
        if !(low.is_finite() && high.is_finite()) || low > high {
            return Err(CoreError::Domain("sampler box needs finite low <= high".into()));
        }
        if let Some(r) = refine {
            if !(r.radius.is_finite() && r.radius >= 0.0) {
                return Err(CoreError::Domain("refinement radius must be finite and >= 0".into()));
            }
        }
        Ok(Self { low, high, refine })
    }
}

impl Default for WeightSampler {
    fn default() -> Self {
        Self { low: -1.0, high: 1.0, refine: Some(Refinement { radius: 0.1, per_trace: 4 }) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HypothesisClass {
    Network { spec: NetworkSpec, sampler: WeightSampler },
    Baseline(BaselineClass),
}

/// Knobs shared by everything that enumerates traces of a class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    pub ltf_caps: LtfCaps,
    /// Weight draws for sampled (network) enumeration.
    pub budget: usize,
    pub seed: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { ltf_caps: LtfCaps::default(), budget: 20_000, seed: DEFAULT_SEED }
    }
}

/// Distinct traces of a class on a point set, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    pub traces: Vec<Trace>,
    /// False when the set came from sampling and may miss traces.
    pub exact: bool,
}

impl TraceSet {
    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }
}

impl HypothesisClass {
    pub fn network(spec: NetworkSpec, sampler: WeightSampler) -> Self {
        Self::Network { spec, sampler }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Self::Network { spec, .. } => spec.input_dim(),
            Self::Baseline(b) => b.input_dim(),
        }
    }

    /// The parameter count `m` used in the sample-size bounds: weights for a
    /// network, `d + 1` for affine thresholds, the capacity for unions of
    /// points. Explicit finite classes have none.
    pub fn parameter_count(&self) -> Option<usize> {
        match self {
            Self::Network { spec, .. } => Some(spec.weight_count()),
            Self::Baseline(BaselineClass::LinearThreshold { dim }) => Some(dim + 1),
            Self::Baseline(BaselineClass::UnionOfPoints { capacity, .. }) => Some(*capacity),
            Self::Baseline(BaselineClass::ExplicitFinite { .. }) => None,
        }
    }

    pub fn domain(&self) -> Option<&PointSet> {
        match self {
            Self::Network { .. } => None,
            Self::Baseline(b) => b.domain(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Baseline(_))
    }

    fn check_dim(&self, points: &PointSet) -> Result<()> {
        if points.dim() != self.input_dim() {
            return Err(CoreError::DimensionMismatch { expected: self.input_dim(), found: points.dim() });
        }
        Ok(())
    }

    /// For each point, its index in the class domain (finite classes only).
    pub(crate) fn domain_positions(&self, points: &PointSet) -> Option<Vec<Option<usize>>> {
        self.domain().map(|d| points.iter().map(|p| d.index_of(p)).collect())
    }

    /// Every trace the class realizes on `points`: exact for baseline classes,
    /// a sampled subset for networks.
    pub fn traces_on(&self, points: &PointSet, opts: &EnumerationOptions) -> Result<TraceSet> {
        self.check_dim(points)?;
        match self {
            Self::Network { spec, sampler } => {
                let set = sample_traces(spec, sampler, points, opts.budget, opts.seed)?;
                Ok(TraceSet { traces: set.into_iter().collect(), exact: false })
            }
            Self::Baseline(BaselineClass::LinearThreshold { .. }) => {
                let mut traces = ltf_traces(points, opts.ltf_caps)?;
                traces.sort();
                Ok(TraceSet { traces, exact: true })
            }
            Self::Baseline(BaselineClass::UnionOfPoints { capacity, .. }) => {
                let pos = self.domain_positions(points).expect("finite class");
                let members: Vec<usize> = pos.iter().enumerate().filter(|(_, p)| p.is_some()).map(|(i, _)| i).collect();
                let count = crate::dichotomy::sauer_shelah_cap(*capacity, members.len());
                if count.saturated || count.value > MAX_ENUMERATED_TRACES as u128 {
                    return Err(CoreError::CapExceeded {
                        what: "enumerated traces",
                        value: usize::try_from(count.value).unwrap_or(usize::MAX),
                        cap: MAX_ENUMERATED_TRACES,
                    });
                }
                let mut set = BTreeSet::new();
                for size in 0..=(*capacity).min(members.len()) {
                    for_each_combination(members.len(), size, |c| {
                        let mut t = Trace::zeros(points.len());
                        for &i in c {
                            t.set(members[i], true);
                        }
                        set.insert(t);
                    });
                }
                Ok(TraceSet { traces: set.into_iter().collect(), exact: true })
            }
            Self::Baseline(BaselineClass::ExplicitFinite { traces, .. }) => {
                let pos = self.domain_positions(points).expect("finite class");
                let set: BTreeSet<Trace> = traces.iter().map(|t| t.restrict(&pos)).collect();
                Ok(TraceSet { traces: set.into_iter().collect(), exact: true })
            }
        }
    }
}
