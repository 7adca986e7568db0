use alloc::format;
use alloc::vec::Vec;

use super::GrowthEstimate;
use crate::{math, CoreError, Result};

/// Which growth samples enter the log-log fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitPolicy {
    /// The upper half of the distinct `n` values, but never fewer than three.
    #[default]
    UpperHalf,
    All,
    /// Samples with `n_min <= n <= n_max`.
    Range { n_min: usize, n_max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEstimate {
    /// Fitted exponent, clamped at zero.
    pub slope: f64,
    /// Least-squares slope before clamping.
    pub raw_slope: f64,
    pub intercept: f64,
    pub fit_range: (usize, usize),
    /// Root-mean-square residual of `ln count` around the fitted line.
    pub residual: f64,
    pub points: usize,
}

/// Ordinary least squares of `y` on `x`; returns `(slope, intercept, rms residual)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| { let r = y - intercept - slope * x; r * r }).sum();
    (slope, intercept, math::sqrt(sse / n))
}

/// Slope of `ln tau(n)` against `ln n`: the empirical VC-density.
///
/// Samples with `n = 0`, zero counts, or saturated counts are dropped; when
/// the same `n` appears twice the larger count is kept. The fit needs at
/// least three samples whose `n` spans a factor of four.
pub fn estimate_vc_density(g: &GrowthEstimate, policy: FitPolicy) -> Result<DensityEstimate> {
    let mut usable: Vec<(usize, f64)> = Vec::new();
    let mut sorted = g.samples.clone();
    sorted.sort_by_key(|s| s.n);
    for s in sorted {
        if s.n == 0 || s.count.value == 0 || s.count.saturated {
            continue;
        }
        match usable.last_mut() {
            Some(last) if last.0 == s.n => last.1 = last.1.max(s.count.as_f64()),
            _ => usable.push((s.n, s.count.as_f64())),
        }
    }
    let chosen: Vec<(usize, f64)> = match policy {
        FitPolicy::All => usable,
        FitPolicy::UpperHalf => {
            let keep = usable.len().div_ceil(2).max(3).min(usable.len());
            usable[usable.len() - keep..].to_vec()
        }
        FitPolicy::Range { n_min, n_max } => usable.into_iter().filter(|(n, _)| (n_min..=n_max).contains(n)).collect(),
    };
    if chosen.len() < 3 {
        return Err(CoreError::InsufficientSamples(format!("{} usable sample(s)", chosen.len())));
    }
    let (lo, hi) = (chosen[0].0, chosen[chosen.len() - 1].0);
    if hi < 4 * lo {
        return Err(CoreError::InsufficientSamples(format!("n spans only {lo}..{hi}")));
    }
    let xs: Vec<f64> = chosen.iter().map(|(n, _)| math::ln(*n as f64)).collect();
    let ys: Vec<f64> = chosen.iter().map(|(_, c)| math::ln(*c)).collect();
    let (raw_slope, intercept, residual) = fit_line(&xs, &ys);
    Ok(DensityEstimate { slope: raw_slope.max(0.0), raw_slope, intercept, fit_range: (lo, hi), residual, points: chosen.len() })
}
