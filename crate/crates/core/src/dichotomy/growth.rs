use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index::sample;

use super::{count_dichotomies_arrangement, count_dichotomies_exact_ltf, count_dichotomies_sampled, PointSet};
use crate::class::{EnumerationOptions, HypothesisClass};
use crate::hypothesis::BaselineClass;
use crate::{rng, CoreError, Result};

/// A dichotomy count that saturates at `u128::MAX` instead of overflowing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GrowthCount {
    pub value: u128,
    /// Set when the true value did not fit and `value` is `u128::MAX`.
    pub saturated: bool,
}

impl GrowthCount {
    pub const fn exact(value: u128) -> Self {
        Self { value, saturated: false }
    }

    const SATURATED: Self = Self { value: u128::MAX, saturated: true };

    fn add(self, other: Self) -> Self {
        match self.value.checked_add(other.value) {
            Some(v) if !(self.saturated || other.saturated) => Self::exact(v),
            _ => Self::SATURATED,
        }
    }

    fn double(self) -> Self {
        self.add(self)
    }

    pub fn as_f64(&self) -> f64 {
        self.value as f64
    }
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> GrowthCount {
    if k > n {
        return GrowthCount::exact(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        // c * (n - k + i) / i stays integral at every step
        match c.checked_mul(n as u128 - k as u128 + i) {
            Some(v) => c = v / i,
            None => return GrowthCount::SATURATED,
        }
    }
    GrowthCount::exact(c)
}

/// `2^n`, saturating.
pub fn power_of_two(n: usize) -> GrowthCount {
    if n >= 128 {
        GrowthCount::SATURATED
    } else {
        GrowthCount::exact(1u128 << n)
    }
}

/// `sum_{i <= min(d, n)} C(n, i)`: the largest number of subsets of an
/// `n`-set that a class of VC-dimension `d` can pick out.
pub fn sauer_shelah_cap(d: usize, n: usize) -> GrowthCount {
    if d >= n {
        return power_of_two(n);
    }
    (0..=d).fold(GrowthCount::exact(0), |acc, i| acc.add(binomial(n, i)))
}

/// Closed-form growth function of a baseline class.
///
/// * unions of at most `m` points: `sum_{i <= min(m, n)} C(n, i)`;
/// * affine thresholds on `R^d`: `2 sum_{i <= d} C(n - 1, i)` (general
///   position; equals `2^n` for `n <= d + 1`);
/// * explicit lists: exhaustive maximum over the `n`-subsets of the domain.
pub fn growth_function_oracle(c: &BaselineClass, n: usize) -> Result<GrowthCount> {
    match c {
        BaselineClass::UnionOfPoints { capacity, .. } => Ok(sauer_shelah_cap(*capacity, n)),
        BaselineClass::LinearThreshold { dim } => {
            if n == 0 {
                return Ok(GrowthCount::exact(1));
            }
            if n <= dim + 1 {
                return Ok(power_of_two(n));
            }
            Ok(sauer_shelah_cap(*dim, n - 1).double())
        }
        BaselineClass::ExplicitFinite { domain, .. } => {
            if n > domain.len() {
                return Err(CoreError::Domain(alloc::format!("domain has only {} points, asked for n = {n}", domain.len())));
            }
            const MAX_SUBSETS: u128 = 1 << 22;
            let subsets = binomial(domain.len(), n);
            if subsets.saturated || subsets.value > MAX_SUBSETS {
                return Err(CoreError::CapExceeded {
                    what: "domain subsets",
                    value: usize::try_from(subsets.value).unwrap_or(usize::MAX),
                    cap: MAX_SUBSETS as usize,
                });
            }
            let class = HypothesisClass::Baseline(c.clone());
            let mut best = 0usize;
            let mut failure = None;
            super::for_each_combination(domain.len(), n, |idx| {
                if failure.is_some() {
                    return;
                }
                match domain.subset(idx).and_then(|b| class.traces_on(&b, &EnumerationOptions::default())) {
                    Ok(t) => best = best.max(t.len()),
                    Err(e) => failure = Some(e),
                }
            });
            match failure {
                Some(e) => Err(e),
                None => Ok(GrowthCount::exact(best as u128)),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    LowerBound,
}

impl Exactness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::LowerBound => "lower_bound",
        }
    }
}

/// How counts are obtained for each tested point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthMethod {
    /// Margin LP over all labelings for affine thresholds; exact
    /// combinatorics for the finite baseline classes.
    Exact,
    /// Hyperplane-arrangement walk (affine thresholds in general position).
    Arrangement,
    /// Distinct traces over `budget` weight draws (networks); a lower bound.
    Sampled { budget: usize },
    /// Closed-form growth function; no point sets are drawn.
    Oracle,
}

/// Which point sets are tried for each `n`. The growth function is a maximum
/// over all `n`-sets, so the estimate keeps the largest count seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSetPolicy {
    pub random_draws: usize,
    /// Also try moment-curve points (or the first `n` domain points).
    pub structured: bool,
}

impl Default for PointSetPolicy {
    fn default() -> Self {
        Self { random_draws: 4, structured: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthSample {
    pub n: usize,
    pub count: GrowthCount,
    pub exactness: Exactness,
}

/// Samples of `tau(n)` for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub class_id: String,
    pub samples: Vec<GrowthSample>,
    pub method: GrowthMethod,
    pub policy: PointSetPolicy,
    pub seed: u64,
}

const GROWTH_STREAM: u64 = 0x4752_4F57;

fn point_sets(class: &HypothesisClass, n: usize, policy: &PointSetPolicy, seed: u64) -> Result<Vec<PointSet>> {
    let mut out = Vec::new();
    if let Some(domain) = class.domain() {
        if n > domain.len() {
            return Err(CoreError::Domain(alloc::format!("domain has only {} points, asked for n = {n}", domain.len())));
        }
        if policy.structured {
            out.push(domain.subset(&(0..n).collect::<Vec<_>>())?);
        }
        for r in 0..policy.random_draws {
            let mut rng = rng::stream(seed, &[GROWTH_STREAM, n as u64, r as u64]);
            let mut idx = sample(&mut rng, domain.len(), n).into_vec();
            idx.sort_unstable();
            out.push(domain.subset(&idx)?);
        }
    } else {
        let d = class.input_dim();
        if policy.structured {
            out.push(PointSet::moment_curve(n, d)?);
        }
        for r in 0..policy.random_draws {
            let mut rng = rng::stream(seed, &[GROWTH_STREAM, n as u64, r as u64]);
            let s = if d <= 3 {
                PointSet::random_general_position(n, d, &mut rng)?
            } else {
                PointSet::random_uniform(n, d, 0.0, 1.0, &mut rng)?
            };
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(CoreError::Domain("point-set policy selects no sets".into()));
    }
    Ok(out)
}

/// Number of dichotomies of `class` on one point set with `method`.
pub fn count_dichotomies(
    class: &HypothesisClass,
    points: &PointSet,
    method: GrowthMethod,
    opts: &EnumerationOptions,
) -> Result<(GrowthCount, Exactness)> {
    use HypothesisClass::{Baseline, Network};
    match (class, method) {
        (_, GrowthMethod::Oracle) => Err(CoreError::Unsupported("oracle counts do not depend on a point set")),
        (Baseline(BaselineClass::LinearThreshold { .. }), GrowthMethod::Exact) => {
            Ok((GrowthCount::exact(count_dichotomies_exact_ltf(points, opts.ltf_caps)?), Exactness::Exact))
        }
        (Baseline(BaselineClass::LinearThreshold { .. }), GrowthMethod::Arrangement) => {
            Ok((GrowthCount::exact(count_dichotomies_arrangement(points, opts.ltf_caps.max_dim)?), Exactness::Exact))
        }
        (Baseline(BaselineClass::UnionOfPoints { capacity, .. }), GrowthMethod::Exact) => {
            let inside = class.domain_positions(points).expect("finite class").iter().filter(|p| p.is_some()).count();
            Ok((sauer_shelah_cap(*capacity, inside), Exactness::Exact))
        }
        (Baseline(BaselineClass::ExplicitFinite { .. }), GrowthMethod::Exact) => {
            Ok((GrowthCount::exact(class.traces_on(points, opts)?.len() as u128), Exactness::Exact))
        }
        (Network { spec, sampler }, GrowthMethod::Sampled { budget }) => Ok((
            GrowthCount::exact(count_dichotomies_sampled(spec, sampler, points, budget, opts.seed)?),
            Exactness::LowerBound,
        )),
        (Baseline(BaselineClass::LinearThreshold { dim }), GrowthMethod::Sampled { budget }) => {
            let net = crate::hypothesis::NetworkSpec::perceptron(*dim)?;
            let sampler = crate::class::WeightSampler::default();
            Ok((GrowthCount::exact(count_dichotomies_sampled(&net, &sampler, points, budget, opts.seed)?), Exactness::LowerBound))
        }
        _ => Err(CoreError::Unsupported("counting method not available for this class")),
    }
}

/// `tau(n)` for each `n` in `ns`: the largest count over the point sets
/// chosen by `policy`, or the closed form for [`GrowthMethod::Oracle`].
pub fn estimate_growth(
    class: &HypothesisClass,
    class_id: &str,
    ns: &[usize],
    method: GrowthMethod,
    policy: PointSetPolicy,
    opts: &EnumerationOptions,
) -> Result<GrowthEstimate> {
    let mut samples = Vec::with_capacity(ns.len());
    for &n in ns {
        let sample = match (method, class) {
            (GrowthMethod::Oracle, HypothesisClass::Baseline(b)) => {
                GrowthSample { n, count: growth_function_oracle(b, n)?, exactness: Exactness::Exact }
            }
            (GrowthMethod::Oracle, HypothesisClass::Network { .. }) => {
                return Err(CoreError::Unsupported("no closed-form growth function for network classes"))
            }
            _ => {
                let mut best: Option<(GrowthCount, Exactness)> = None;
                for (r, set) in point_sets(class, n, &policy, opts.seed)?.iter().enumerate() {
                    let o = EnumerationOptions { seed: rng::stream_key(opts.seed, &[n as u64, r as u64]), ..*opts };
                    let c = count_dichotomies(class, set, method, &o)?;
                    if best.map_or(true, |b| c.0 > b.0) {
                        best = Some(c);
                    }
                }
                let (count, exactness) = best.expect("at least one point set");
                GrowthSample { n, count, exactness }
            }
        };
        samples.push(sample);
    }
    Ok(GrowthEstimate { class_id: class_id.into(), samples, method, policy, seed: opts.seed })
}
