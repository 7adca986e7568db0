use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::lp::{max_margin, MarginOutcome};
use super::{for_each_combination, PointSet, Trace};
use crate::class::WeightSampler;
use crate::hypothesis::network::forward;
use crate::hypothesis::NetworkSpec;
use crate::{math, rng, CoreError, Result};

/// Size limits for exact counting by enumerating labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LtfCaps {
    pub max_points: usize,
    pub max_dim: usize,
}

impl Default for LtfCaps {
    fn default() -> Self {
        Self { max_points: 20, max_dim: 4 }
    }
}

fn check_caps(points: &PointSet, caps: LtfCaps) -> Result<()> {
    if points.len() > caps.max_points {
        return Err(CoreError::CapExceeded { what: "points", value: points.len(), cap: caps.max_points });
    }
    if points.dim() > caps.max_dim {
        return Err(CoreError::CapExceeded { what: "dimension", value: points.dim(), cap: caps.max_dim });
    }
    Ok(())
}

/// All labelings of `points` realized by affine thresholds `w.x + b > 0`,
/// each decided by the margin LP.
///
/// Only labelings with the last bit clear are solved; the complement of a
/// separable labeling is separated by `(-w, -b)`.
pub fn ltf_traces(points: &PointSet, caps: LtfCaps) -> Result<Vec<Trace>> {
    check_caps(points, caps)?;
    let n = points.len();
    if n == 0 {
        return Ok(vec![Trace::zeros(0)]);
    }
    let mut out = Vec::new();
    let mut indeterminate = 0;
    for mask in 0..(1u64 << (n - 1)) {
        let labels = Trace::from_mask(mask, n);
        match max_margin(points, &labels) {
            MarginOutcome::Separable { .. } => {
                out.push(labels.complement());
                out.push(labels);
            }
            MarginOutcome::Inseparable { .. } => {}
            MarginOutcome::Indeterminate { .. } => indeterminate += 1,
        }
    }
    if indeterminate > 0 {
        return Err(CoreError::Indeterminate(indeterminate * 2));
    }
    Ok(out)
}

/// Exact number of affine-threshold dichotomies of `points`.
pub fn count_dichotomies_exact_ltf(points: &PointSet, caps: LtfCaps) -> Result<u128> {
    Ok(ltf_traces(points, caps)?.len() as u128)
}

/// Coefficients `(w, b)` of the hyperplane through `d` affinely independent
/// points of `R^d`: the cofactor expansion of the null vector of the
/// `d x (d + 1)` matrix with rows `(x_s, 1)`.
fn hyperplane_through(points: &PointSet, idx: &[usize]) -> Vec<f64> {
    let d = points.dim();
    let mut normal = vec![0.0; d + 1];
    let mut minor = vec![0.0; d * d];
    for (k, slot) in normal.iter_mut().enumerate() {
        for (r, &i) in idx.iter().enumerate() {
            let p = points.point(i);
            let mut c = 0;
            for (col, v) in p.iter().chain(core::iter::once(&1.0)).enumerate() {
                if col == k {
                    continue;
                }
                minor[r * d + c] = *v;
                c += 1;
            }
        }
        let det = math::determinant(&mut minor, d);
        *slot = if k % 2 == 0 { det } else { -det };
    }
    normal
}

/// Affine-threshold dichotomies of a general-position set by walking the
/// arrangement: every nonconstant separable labeling can be moved to a
/// hyperplane through `d` of the points, and each such hyperplane yields all
/// `2^d` labelings of those points combined with the sides of the rest.
///
/// Runs in `O(C(n, d) n 2^d)` and has no cap on `n`, so it complements the
/// LP route on large sets.
pub fn ltf_traces_arrangement(points: &PointSet, max_dim: usize) -> Result<BTreeSet<Trace>> {
    let d = points.dim();
    if d > max_dim {
        return Err(CoreError::CapExceeded { what: "dimension", value: d, cap: max_dim });
    }
    if d <= 3 && !points.is_in_general_position()? {
        return Err(CoreError::Degenerate("arrangement count needs general position".into()));
    }
    let n = points.len();
    let mut set = BTreeSet::new();
    if n <= d {
        // affinely independent: every labeling is realizable
        for mask in 0..(1u64 << n) {
            set.insert(Trace::from_mask(mask, n));
        }
        return Ok(set);
    }
    set.insert(Trace::zeros(n));
    set.insert(Trace::ones(n));
    let scale = points.scale();
    let mut degenerate = None;
    for_each_combination(n, d, |idx| {
        if degenerate.is_some() {
            return;
        }
        let h = hyperplane_through(points, idx);
        let norm = math::sqrt(h[..d].iter().map(|v| v * v).sum());
        let mut side = Trace::zeros(n);
        for i in 0..n {
            if idx.contains(&i) {
                continue;
            }
            let v: f64 = points.point(i).iter().zip(&h).map(|(a, b)| a * b).sum::<f64>() + h[d];
            if v.abs() <= 1e-10 * norm * scale {
                degenerate = Some(i);
                return;
            }
            side.set(i, v > 0.0);
        }
        for orient in [false, true] {
            let base = if orient { side.complement() } else { side.clone() };
            for mask in 0..(1u64 << d) {
                let mut t = base.clone();
                for (b, &i) in idx.iter().enumerate() {
                    t.set(i, mask >> b & 1 == 1);
                }
                set.insert(t);
            }
        }
    });
    if let Some(i) = degenerate {
        return Err(CoreError::Degenerate(format!("point {i} lies on a hyperplane through {d} others")));
    }
    Ok(set)
}

pub fn count_dichotomies_arrangement(points: &PointSet, max_dim: usize) -> Result<u128> {
    Ok(ltf_traces_arrangement(points, max_dim)?.len() as u128)
}

fn trace_with_weights(net: &NetworkSpec, w: &[f64], points: &PointSet) -> Result<Trace> {
    let mut t = Trace::zeros(points.len());
    for (i, p) in points.iter().enumerate() {
        if forward(net, w, p)? > 0.0 {
            t.set(i, true);
        }
    }
    Ok(t)
}

fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

const SAMPLER_STREAM: u64 = 0x5A4D_504C;

/// Distinct traces found with `budget` weight draws.
///
/// Draw `s` is a global uniform draw unless refinement is on, `s` is odd,
/// and a perturbation is pending; then it perturbs the weights of a recently
/// discovered trace. The draw sequence does not depend on `budget`, so a
/// larger budget always finds a superset.
pub fn sample_traces(
    net: &NetworkSpec,
    sampler: &WeightSampler,
    points: &PointSet,
    budget: usize,
    seed: u64,
) -> Result<BTreeSet<Trace>> {
    if budget == 0 {
        return Err(CoreError::Domain("sampling budget must be >= 1".into()));
    }
    if points.dim() != net.input_dim() {
        return Err(CoreError::DimensionMismatch { expected: net.input_dim(), found: points.dim() });
    }
    let mut rng = rng::stream(seed, &[SAMPLER_STREAM, points.len() as u64]);
    let m = net.weight_count();
    let mut w = vec![0.0; m];
    let mut found = BTreeSet::new();
    let mut pending: VecDeque<(Vec<f64>, usize)> = VecDeque::new();
    for step in 0..budget {
        let local = sampler.refine.filter(|_| step % 2 == 1 && !pending.is_empty());
        if let Some(r) = local {
            let (center, left) = pending.front_mut().expect("checked non-empty");
            for (wi, ci) in w.iter_mut().zip(center.iter()) {
                *wi = ci + uniform(&mut rng, -r.radius, r.radius);
            }
            *left -= 1;
            if *left == 0 {
                pending.pop_front();
            }
        } else {
            for wi in &mut w {
                *wi = uniform(&mut rng, sampler.low, sampler.high);
            }
        }
        let t = trace_with_weights(net, &w, points)?;
        if found.insert(t) {
            if let Some(r) = sampler.refine {
                if r.per_trace > 0 {
                    pending.push_back((w.clone(), r.per_trace));
                }
            }
        }
    }
    Ok(found)
}

/// Lower bound on the number of dichotomies a network class realizes on
/// `points`: the number of distinct traces seen in `budget` draws.
pub fn count_dichotomies_sampled(
    net: &NetworkSpec,
    sampler: &WeightSampler,
    points: &PointSet,
    budget: usize,
    seed: u64,
) -> Result<u128> {
    Ok(sample_traces(net, sampler, points, budget, seed)?.len() as u128)
}
