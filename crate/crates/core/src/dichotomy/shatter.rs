use alloc::vec::Vec;

use rand::seq::index::sample;

use super::lp::{max_margin, MarginOutcome};
use super::{sample_traces, PointSet, Trace};
use crate::class::HypothesisClass;
use crate::hypothesis::BaselineClass;
use crate::{rng, CoreError, Result};

/// How far a shattering or VC-dimension answer can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    /// Every labeling was decided exactly.
    Exact,
    /// Labelings were searched for by sampling weights; a missing labeling
    /// means "not found", not "impossible".
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShatterOptions {
    /// Largest set for which all `2^|B|` labelings are tried.
    pub cap: usize,
    /// Weight draws per set for sampled classes.
    pub budget: usize,
    pub seed: u64,
}

impl Default for ShatterOptions {
    fn default() -> Self {
        Self { cap: 16, budget: 20_000, seed: rng::DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShatterResult {
    pub shattered: bool,
    pub certainty: Certainty,
    /// A labeling that was not realized, when `shattered` is false.
    pub missing: Option<Trace>,
}

fn first_missing(found: &[Trace], n: usize) -> Option<Trace> {
    (0..1u64 << n).map(|m| Trace::from_mask(m, n)).find(|t| found.binary_search(t).is_err())
}

/// Whether `class` realizes all `2^|B|` labelings of `points`.
///
/// Exact for baseline classes (the margin LP decides each labeling of an
/// affine-threshold class). For networks the labelings are searched by
/// sampling, and a negative answer is flagged [`Certainty::Sampled`].
/// An LP labeling too close to degenerate to decide yields
/// [`CoreError::Indeterminate`].
pub fn is_shattered(class: &HypothesisClass, points: &PointSet, opts: &ShatterOptions) -> Result<ShatterResult> {
    let n = points.len();
    if n > opts.cap {
        return Err(CoreError::CapExceeded { what: "shattering set size", value: n, cap: opts.cap });
    }
    if points.dim() != class.input_dim() {
        return Err(CoreError::DimensionMismatch { expected: class.input_dim(), found: points.dim() });
    }
    let exact = |missing: Option<Trace>| ShatterResult { shattered: missing.is_none(), certainty: Certainty::Exact, missing };
    if n == 0 {
        return Ok(exact(None));
    }
    match class {
        HypothesisClass::Baseline(BaselineClass::LinearThreshold { .. }) => {
            for mask in 0..(1u64 << (n - 1)) {
                let labels = Trace::from_mask(mask, n);
                match max_margin(points, &labels) {
                    MarginOutcome::Separable { .. } => {}
                    MarginOutcome::Inseparable { .. } => return Ok(exact(Some(labels))),
                    MarginOutcome::Indeterminate { .. } => return Err(CoreError::Indeterminate(1)),
                }
            }
            Ok(exact(None))
        }
        HypothesisClass::Baseline(BaselineClass::UnionOfPoints { capacity, .. }) => {
            let pos = class.domain_positions(points).expect("finite class");
            if pos.iter().any(Option::is_none) {
                let outside = pos.iter().position(Option::is_none).expect("exists");
                let mut t = Trace::zeros(n);
                t.set(outside, true);
                return Ok(exact(Some(t)));
            }
            Ok(exact((n > *capacity).then(|| Trace::ones(n))))
        }
        HypothesisClass::Baseline(BaselineClass::ExplicitFinite { .. }) => {
            let found = class.traces_on(points, &Default::default())?.traces;
            Ok(exact(first_missing(&found, n)))
        }
        HypothesisClass::Network { spec, sampler } => {
            let found: Vec<Trace> = sample_traces(spec, sampler, points, opts.budget, opts.seed)?.into_iter().collect();
            let missing = first_missing(&found, n);
            Ok(ShatterResult { shattered: missing.is_none(), certainty: Certainty::Sampled, missing })
        }
    }
}

/// Search settings for [`vc_dim_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VcSearch {
    pub max_d: usize,
    /// Random candidate sets tried per size, on top of the structured ones.
    pub random_sets: usize,
    /// Box `[lo, hi]^n` for random candidates of continuous classes.
    pub box_lo: f64,
    pub box_hi: f64,
    pub seed: u64,
    pub shatter: ShatterOptions,
}

impl Default for VcSearch {
    fn default() -> Self {
        Self { max_d: 8, random_sets: 8, box_lo: -1.0, box_hi: 1.0, seed: rng::DEFAULT_SEED, shatter: ShatterOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VcDimEstimate {
    /// Largest size for which a shattered candidate set was found.
    pub value: usize,
    /// True when a set of size `max_d` was shattered, i.e. the answer is
    /// "at least `max_d`".
    pub at_cap: bool,
    pub certainty: Certainty,
    /// A shattered set of size `value`.
    pub witness: Option<PointSet>,
}

const VC_STREAM: u64 = 0x5643_4449;

fn candidates(class: &HypothesisClass, size: usize, search: &VcSearch) -> Result<Vec<PointSet>> {
    let mut out = Vec::new();
    if let Some(domain) = class.domain() {
        if size > domain.len() {
            return Ok(out);
        }
        let first: Vec<usize> = (0..size).collect();
        out.push(domain.subset(&first)?);
        for r in 0..search.random_sets {
            let mut rng = rng::stream(search.seed, &[VC_STREAM, size as u64, r as u64]);
            let mut idx = sample(&mut rng, domain.len(), size).into_vec();
            idx.sort_unstable();
            out.push(domain.subset(&idx)?);
        }
        return Ok(out);
    }
    let d = class.input_dim();
    if size <= d + 1 {
        out.push(PointSet::simplex_vertices(size, d)?);
    }
    out.push(PointSet::moment_curve(size, d)?);
    if d == 2 {
        out.push(PointSet::convex_polygon(size)?);
    }
    for r in 0..search.random_sets {
        let mut rng = rng::stream(search.seed, &[VC_STREAM, size as u64, r as u64]);
        if r % 4 == 3 {
            if let Ok(g) = PointSet::random_grid(size, d, 4, &mut rng) {
                out.push(g);
            }
        } else {
            out.push(PointSet::random_uniform(size, d, search.box_lo, search.box_hi, &mut rng)?);
        }
    }
    Ok(out)
}

/// Largest `s <= max_d` such that some candidate `s`-point set is shattered.
///
/// Sizes are tried in increasing order and the search stops at the first
/// size with no shattered candidate: every subset of a shattered set is
/// shattered, so a class that shatters some `(s+1)`-set also shatters an
/// `s`-set. Candidates are subsets of the domain for finite classes, and
/// simplex vertices, moment-curve points, a convex polygon (plane only),
/// uniform draws and grid points otherwise. The result is a lower bound on
/// the VC-dimension unless the class is exact and the candidates exhaust
/// the relevant configurations.
pub fn vc_dim_bruteforce(class: &HypothesisClass, search: &VcSearch) -> Result<VcDimEstimate> {
    if search.max_d > search.shatter.cap {
        return Err(CoreError::CapExceeded { what: "max_d", value: search.max_d, cap: search.shatter.cap });
    }
    let certainty = if class.is_exact() { Certainty::Exact } else { Certainty::Sampled };
    let mut best = VcDimEstimate { value: 0, at_cap: search.max_d == 0, certainty, witness: Some(PointSet::empty(class.input_dim())) };
    for size in 1..=search.max_d {
        let mut witness = None;
        for (k, cand) in candidates(class, size, search)?.into_iter().enumerate() {
            let opts = ShatterOptions { seed: search.shatter.seed ^ (size as u64) << 32 ^ k as u64, ..search.shatter };
            match is_shattered(class, &cand, &opts) {
                Ok(r) if r.shattered => {
                    witness = Some(cand);
                    break;
                }
                Ok(_) | Err(CoreError::Indeterminate(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match witness {
            Some(w) => {
                best.value = size;
                best.witness = Some(w);
                best.at_cap = size == search.max_d;
            }
            None => break,
        }
    }
    Ok(best)
}
