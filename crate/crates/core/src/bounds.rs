//! Sample-size bounds for uniform convergence of a class whose growth
//! function is at most polynomial of degree `m`.
//!
//! Two routes are implemented:
//!
//! * the growth-function route: `|L_D(h) - L_S(h)| <= (4 + sqrt(ln tau(2k))) / (delta sqrt(2k))`
//!   with `tau(2k) <= (2k)^m`, giving `k = a ln a` with `a = 4m / (eps^2 delta^2)`;
//! * the Rademacher route: Massart's cap `sqrt(2 ln(C k^m) / k)` and the
//!   deviation `sqrt(8 m ln(C' k) / k) + sqrt(2 ln(4/delta) / k)`, giving
//!   `k = C_hat [ (m/eps^2) ln(2m/eps^2) + ln(4/delta)/eps^2 ]`.
//!
//! Every closed form comes with an integer solver that finds the smallest
//! sample size meeting the underlying inequality, so the closed forms can be
//! checked rather than trusted. All logarithms are natural.

use crate::{math, CoreError, Result};
use alloc::format;

/// Constants of the Rademacher route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// Multiplier in the behavior-count cap `|A| <= C k^m`.
    pub c: f64,
    /// Constant inside `ln(C' k)` after absorbing `C`.
    pub c_prime: f64,
    /// Leading constant of the closed-form Rademacher sample size.
    pub c_hat: f64,
}

impl BoundConstants {
    pub fn new(c: f64, c_prime: f64, c_hat: f64) -> Result<Self> {
        for (name, v) in [("C", c), ("C'", c_prime), ("C_hat", c_hat)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CoreError::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { c, c_prime, c_hat })
    }
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self { c: 1.0, c_prime: 2.0, c_hat: 64.0 }
    }
}

/// Denominator of the confidence term in [`deviation_bound_rademacher`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConfidenceDenominator {
    /// `sqrt(2 ln(4/delta) / k)`.
    #[default]
    SampleSize,
    /// `sqrt(2 ln(4/delta) / m)`, kept for comparison; it does not shrink with `k`.
    WeightCount,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    pub m: usize,
    pub eps: f64,
    pub delta: f64,
    pub constants: BoundConstants,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(CoreError::Domain(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

impl BoundQuery {
    pub fn new(m: usize, eps: f64, delta: f64, constants: BoundConstants) -> Result<Self> {
        if m == 0 {
            return Err(CoreError::Domain("m must be a positive integer".into()));
        }
        check_unit("eps", eps)?;
        check_unit("delta", delta)?;
        Ok(Self { m, eps, delta, constants })
    }
}

/// `tau(2k)` given either as a count or through its natural logarithm
/// (for values like `(2k)^m` that overflow).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthValue {
    Count(u128),
    Ln(f64),
}

impl GrowthValue {
    /// `base^exp`, carried as a logarithm.
    pub fn power(base: f64, exp: usize) -> Self {
        Self::Ln(exp as f64 * math::ln(base))
    }

    fn ln(self) -> Result<f64> {
        match self {
            Self::Count(0) => Err(CoreError::Domain("tau(2k) must be >= 1".into())),
            Self::Count(c) => Ok(math::ln(c as f64)),
            Self::Ln(l) if l >= 0.0 && l.is_finite() => Ok(l),
            Self::Ln(l) => Err(CoreError::Domain(format!("ln tau(2k) must be finite and >= 0, got {l}"))),
        }
    }
}

/// `(4 + sqrt(ln tau(2k))) / (delta sqrt(2k))`.
pub fn deviation_bound_growth(tau_2k: GrowthValue, k: u64, delta: f64) -> Result<f64> {
    if k == 0 {
        return Err(CoreError::Domain("k must be >= 1".into()));
    }
    check_unit("delta", delta)?;
    let ln_tau = tau_2k.ln()?;
    let two_k = 2.0 * k as f64;
    Ok((4.0 + math::sqrt(ln_tau)) / (delta * math::sqrt(two_k)))
}

/// `a = 4m / (eps^2 delta^2)`.
pub fn elementary_scale(q: &BoundQuery) -> f64 {
    4.0 * q.m as f64 / (q.eps * q.eps * q.delta * q.delta)
}

/// `a ln a` before rounding (`1` when `a <= 1`).
pub fn k_elementary_raw(q: &BoundQuery) -> f64 {
    let a = elementary_scale(q);
    if a <= 1.0 {
        1.0
    } else {
        a * math::ln(a)
    }
}

/// `ceil(a ln a)` with `a = 4m / (eps^2 delta^2)`, at least 1.
pub fn k_elementary(q: &BoundQuery) -> u64 {
    to_sample_size(k_elementary_raw(q))
}

fn to_sample_size(x: f64) -> u64 {
    // float-to-int casts saturate
    (math::ceil(x) as u64).max(1)
}

/// Result of [`solve_k_log_inequality`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogInequalitySolution {
    /// Smallest `k >= 1` such that `j >= a ln j + b` for every integer `j >= k`.
    pub k: u64,
    /// The textbook sufficient size `4a ln(2a) + 2b`, defined for `a >= 1`.
    pub closed_form: Option<f64>,
}

/// Smallest integer threshold past which `k >= a ln k + b` always holds.
///
/// `k - a ln k - b` is convex with its minimum at `k = a`, so the set of
/// solutions is an initial segment plus a tail; the tail's first element is
/// returned (or 1 when every `k >= 1` works). Found by doubling, then
/// bisection on the increasing branch.
pub fn solve_k_log_inequality(a: f64, b: f64) -> Result<LogInequalitySolution> {
    if !(a.is_finite() && a >= 0.0 && b.is_finite() && b >= 0.0) {
        return Err(CoreError::Domain(format!("need finite a >= 0 and b >= 0, got a = {a}, b = {b}")));
    }
    let holds = |k: u64| (k as f64) >= a * math::ln(k as f64) + b;
    let lo = (math::ceil(a) as u64).max(1);
    let k = if holds(lo) {
        if lo > 1 && holds(lo - 1) {
            1
        } else {
            lo
        }
    } else {
        let mut fail = lo;
        let mut hi = lo.saturating_mul(2);
        while !holds(hi) {
            fail = hi;
            hi = hi.checked_mul(2).ok_or_else(|| CoreError::Domain("solution exceeds u64".into()))?;
        }
        while hi - fail > 1 {
            let mid = fail + (hi - fail) / 2;
            if holds(mid) {
                hi = mid;
            } else {
                fail = mid;
            }
        }
        hi
    };
    let closed_form = (a >= 1.0).then(|| 4.0 * a * math::ln(2.0 * a) + 2.0 * b);
    Ok(LogInequalitySolution { k, closed_form })
}

/// Smallest `k` with `2k >= a ln(2k)`, `a = 4m/(eps^2 delta^2)`: the exact
/// solution of the inequality that `a ln a` satisfies sufficiently.
pub fn k_solver_elementary(q: &BoundQuery) -> Result<u64> {
    let x = solve_k_log_inequality(elementary_scale(q), 0.0)?.k;
    Ok(x.div_ceil(2).max(1))
}

/// Massart cap `sqrt(2 ln(C k^m) / k) = sqrt(2 (ln C + m ln k) / k)` on the
/// Rademacher complexity of at most `C k^m` binary vectors of length `k`.
pub fn rademacher_cap(k: f64, m: usize, c: f64) -> Result<f64> {
    if !(k >= 2.0 && k.is_finite()) || !(c > 0.0 && c.is_finite()) {
        return Err(CoreError::Domain(format!("need k >= 2 and C > 0, got k = {k}, C = {c}")));
    }
    let ln_size = math::ln(c) + m as f64 * math::ln(k);
    if ln_size < 0.0 {
        return Err(CoreError::Domain("C k^m must be >= 1".into()));
    }
    Ok(math::sqrt(2.0 * ln_size / k))
}

/// `sqrt(8 m ln(C' k) / k) + sqrt(2 ln(4/delta) / k)`.
pub fn deviation_bound_rademacher(
    k: u64,
    m: usize,
    delta: f64,
    constants: &BoundConstants,
    denominator: ConfidenceDenominator,
) -> Result<f64> {
    if k < 2 {
        return Err(CoreError::Domain("k must be >= 2".into()));
    }
    check_unit("delta", delta)?;
    let kf = k as f64;
    let ln_ck = math::ln(constants.c_prime * kf);
    if ln_ck < 0.0 {
        return Err(CoreError::Domain("C' k must be >= 1".into()));
    }
    let conf_den = match denominator {
        ConfidenceDenominator::SampleSize => kf,
        ConfidenceDenominator::WeightCount => {
            if m == 0 {
                return Err(CoreError::Domain("m must be >= 1 for the weight-count denominator".into()));
            }
            m as f64
        }
    };
    Ok(math::sqrt(8.0 * m as f64 * ln_ck / kf) + math::sqrt(2.0 * math::ln(4.0 / delta) / conf_den))
}

/// `C_hat [ (m/eps^2) ln(2m/eps^2) + ln(4/delta)/eps^2 ]` before rounding.
pub fn k_rademacher_raw(q: &BoundQuery) -> f64 {
    let e2 = q.eps * q.eps;
    let m = q.m as f64;
    q.constants.c_hat * (m / e2 * math::ln(2.0 * m / e2) + math::ln(4.0 / q.delta) / e2)
}

pub fn k_rademacher(q: &BoundQuery) -> u64 {
    to_sample_size(k_rademacher_raw(q))
}

/// Smallest `k` from which on `deviation_bound_rademacher(k) <= eps`.
///
/// The bound decreases for `C' k >= e`; the search starts there.
pub fn k_solver_rademacher(q: &BoundQuery) -> Result<u64> {
    let c = &q.constants;
    let f = |k: u64| deviation_bound_rademacher(k, q.m, q.delta, c, ConfidenceDenominator::SampleSize);
    let start = (math::ceil(core::f64::consts::E / c.c_prime) as u64).max(2);
    if f(start)? <= q.eps {
        return Ok(start);
    }
    let mut fail = start;
    let mut hi = start * 2;
    while f(hi)? > q.eps {
        fail = hi;
        hi = hi.checked_mul(2).ok_or_else(|| CoreError::Domain("solution exceeds u64".into()))?;
    }
    while hi - fail > 1 {
        let mid = fail + (hi - fail) / 2;
        if f(mid)? <= q.eps {
            hi = mid;
        } else {
            fail = mid;
        }
    }
    Ok(hi)
}

/// `(vcdim + ln(1/delta)) / eps^2`: the classical agnostic rate with unit
/// constant, used only as a comparison column.
pub fn classical_reference_bounds(q: &BoundQuery, vcdim: f64) -> Result<f64> {
    if !(vcdim >= 1.0 && vcdim.is_finite()) {
        return Err(CoreError::Domain(format!("vcdim must be >= 1, got {vcdim}")));
    }
    Ok((vcdim + math::ln(1.0 / q.delta)) / (q.eps * q.eps))
}

/// All sample sizes for one query, each re-checked against its defining inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub k_elementary: u64,
    pub k_rademacher: u64,
    pub k_solver_elementary: u64,
    pub k_solver_rademacher: u64,
    /// Growth-route deviation at `k_elementary` with `tau(2k) = (2k)^m`.
    pub deviation_elementary: f64,
    /// Rademacher-route deviation at `k_rademacher`.
    pub deviation_rademacher: f64,
    /// `m ln(2k) >= 16` at `k_elementary`: the additive 4 is absorbed.
    pub elementary_in_regime: bool,
    pub verified_elementary: bool,
    pub verified_rademacher: bool,
    pub verified_solver_elementary: bool,
    pub verified_solver_rademacher: bool,
    /// Classical rate with VC-dimension `m^2`, `m^4`, and `max(1, m ln m)`.
    pub classical_m2: f64,
    pub classical_m4: f64,
    pub classical_mlogm: f64,
}

pub fn bound_report(q: &BoundQuery) -> Result<BoundReport> {
    let m = q.m as f64;
    let k_e = k_elementary(q);
    let k_r = k_rademacher(q);
    let k_se = k_solver_elementary(q)?;
    let k_sr = k_solver_rademacher(q)?;
    let dev_e = deviation_bound_growth(GrowthValue::power(2.0 * k_e as f64, q.m), k_e, q.delta)?;
    let dev_r = deviation_bound_rademacher(k_r.max(2), q.m, q.delta, &q.constants, ConfidenceDenominator::SampleSize)?;
    let a = elementary_scale(q);
    let two_k = 2.0 * k_se as f64;
    let solver_e_ok = two_k >= a * math::ln(two_k) && (k_se == 1 || {
        let prev = 2.0 * (k_se - 1) as f64;
        prev < a * math::ln(prev)
    });
    let dev = |k: u64| deviation_bound_rademacher(k, q.m, q.delta, &q.constants, ConfidenceDenominator::SampleSize);
    let solver_r_ok = dev(k_sr)? <= q.eps && (k_sr <= 2 || dev(k_sr - 1)? > q.eps);
    Ok(BoundReport {
        query: *q,
        k_elementary: k_e,
        k_rademacher: k_r,
        k_solver_elementary: k_se,
        k_solver_rademacher: k_sr,
        deviation_elementary: dev_e,
        deviation_rademacher: dev_r,
        elementary_in_regime: m * math::ln(2.0 * k_e as f64) >= 16.0,
        verified_elementary: dev_e <= q.eps,
        verified_rademacher: dev_r <= q.eps,
        verified_solver_elementary: solver_e_ok,
        verified_solver_rademacher: solver_r_ok,
        classical_m2: classical_reference_bounds(q, m * m)?,
        classical_m4: classical_reference_bounds(q, m * m * m * m)?,
        classical_mlogm: classical_reference_bounds(q, (m * math::ln(m)).max(1.0))?,
    })
}

/// The `delta` in `(lo, hi)` where the two closed forms cross, found by
/// bisection on `k_elementary_raw - k_rademacher_raw`; `None` if they do not
/// change order on the interval. Below the crossing the Rademacher size is
/// the smaller one.
pub fn delta_crossover(m: usize, eps: f64, constants: BoundConstants, lo: f64, hi: f64) -> Result<Option<f64>> {
    let diff = |d: f64| -> Result<f64> {
        let q = BoundQuery::new(m, eps, d, constants)?;
        Ok(k_elementary_raw(&q) - k_rademacher_raw(&q))
    };
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (diff(a)?, diff(b)?);
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if diff(mid)?.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn q(m: usize, eps: f64, delta: f64) -> BoundQuery {
        BoundQuery::new(m, eps, delta, BoundConstants::default()).unwrap()
    }

    #[test]
    fn growth_deviation_examples() {
        assert_eq!(deviation_bound_growth(GrowthValue::Count(1), 8, 0.5).unwrap(), 2.0);
        // (4 + sqrt(2 ln 100)) / (0.1 * 10)
        let v = deviation_bound_growth(GrowthValue::power(100.0, 2), 50, 0.1).unwrap();
        assert!((v - 7.034_854).abs() < 1e-6, "{v}");
        let v = deviation_bound_growth(GrowthValue::Count(58), 4, 0.2).unwrap();
        let expected = (4.0 + libm::sqrt(libm::log(58.0))) / (0.2 * libm::sqrt(8.0));
        assert!((v - expected).abs() < 1e-15);
        assert!(deviation_bound_growth(GrowthValue::Count(0), 4, 0.2).is_err());
        assert!(deviation_bound_growth(GrowthValue::Count(1), 0, 0.2).is_err());
    }

    #[test]
    fn k_elementary_reference() {
        // a = 40000, a ln a = 423865.28...
        assert_eq!(k_elementary(&q(1, 0.1, 0.1)), 423_866);
        assert!(k_elementary(&q(2, 0.1, 0.1)) > k_elementary(&q(1, 0.1, 0.1)));
        assert!(k_elementary(&q(1, 0.05, 0.1)) > k_elementary(&q(1, 0.1, 0.1)));
        assert!(k_elementary(&q(1, 0.1, 0.05)) > k_elementary(&q(1, 0.1, 0.1)));
    }

    #[test]
    fn log_inequality_examples() {
        assert_eq!(solve_k_log_inequality(0.0, 0.0).unwrap().k, 1);
        assert_eq!(solve_k_log_inequality(0.0, 0.4).unwrap().k, 1);
        assert_eq!(solve_k_log_inequality(0.0, 7.2).unwrap().k, 8);
        assert_eq!(solve_k_log_inequality(4.0, 0.0).unwrap().k, 9);
        // 1 >= 0.5 ln 1 and the function is increasing from there
        assert_eq!(solve_k_log_inequality(0.5, 0.0).unwrap().k, 1);
        // a = e: k - e ln k >= 0 for every k (equality at k = e)
        assert_eq!(solve_k_log_inequality(core::f64::consts::E, 0.0).unwrap().k, 1);
        assert!(solve_k_log_inequality(-1.0, 0.0).is_err());
    }

    /// Linear scan: the largest failing integer below a generous bound, plus one.
    fn scan(a: f64, b: f64) -> u64 {
        let limit = (4.0 * a * libm::log(2.0 * a + 2.0) + 2.0 * b + 10.0) as u64;
        let mut last_fail = 0;
        for k in 1..=limit {
            if (k as f64) < a * libm::log(k as f64) + b {
                last_fail = k;
            }
        }
        last_fail + 1
    }

    #[test]
    fn solver_matches_linear_scan() {
        for a in [0.0, 0.3, 1.0, 2.0, 2.7, 3.0, 4.0, 7.5, 10.0, 33.0, 100.0, 1234.5] {
            for b in [0.0, 0.5, 1.0, 3.0, 17.0, 250.0] {
                assert_eq!(solve_k_log_inequality(a, b).unwrap().k, scan(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn rademacher_cap_examples() {
        for k in [2.0, 10.0, 1000.0] {
            assert_eq!(rademacher_cap(k, 0, 1.0).unwrap(), 0.0);
        }
        let e2 = libm::exp(2.0);
        assert!((rademacher_cap(e2, 1, 1.0).unwrap() - 2.0 / core::f64::consts::E).abs() < 1e-12);
        // decreasing past k = e^(1 - ln C / m) (here e, for C = 1, m = 1)
        let ks: Vec<f64> = (3..200).map(|k| k as f64).collect();
        for w in ks.windows(2) {
            assert!(rademacher_cap(w[1], 1, 1.0).unwrap() < rademacher_cap(w[0], 1, 1.0).unwrap());
        }
        assert!(rademacher_cap(1.0, 1, 1.0).is_err());
        assert!(rademacher_cap(4.0, 0, 0.5).is_err());
    }

    #[test]
    fn rademacher_deviation_examples() {
        let c1 = BoundConstants::new(1.0, 1.0, 64.0).unwrap();
        let v = deviation_bound_rademacher(100, 1, 0.1, &c1, ConfidenceDenominator::SampleSize).unwrap();
        assert!((v - 0.878_58).abs() < 1e-4, "{v}");
        // delta = 4/e^2: ln(4/delta) = 2, so the second term is 2/sqrt(k)
        let d = 4.0 / libm::exp(2.0);
        let both = deviation_bound_rademacher(64, 1, d, &c1, ConfidenceDenominator::SampleSize).unwrap();
        let first = libm::sqrt(8.0 * libm::log(64.0) / 64.0);
        assert!((both - first - 2.0 / 8.0).abs() < 1e-12);
        let printed = deviation_bound_rademacher(64, 2, d, &c1, ConfidenceDenominator::WeightCount).unwrap();
        let first = libm::sqrt(16.0 * libm::log(64.0) / 64.0);
        assert!((printed - first - libm::sqrt(2.0 * 2.0 / 2.0)).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for k in 3..2000 {
            let v = deviation_bound_rademacher(k, 2, 0.1, &BoundConstants::default(), ConfidenceDenominator::SampleSize).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn k_rademacher_reference() {
        // 64 (100 ln 200 + 100 ln 40) = 57518.07...
        assert_eq!(k_rademacher(&q(1, 0.1, 0.1)), 57_519);
        let diff = k_rademacher_raw(&q(1, 0.1, 0.05)) - k_rademacher_raw(&q(1, 0.1, 0.1));
        assert!((diff - 64.0 * libm::log(2.0) / 0.01).abs() < 1e-8);
        assert!(k_rademacher(&q(1, 0.1, 1e-4)) < k_elementary(&q(1, 0.1, 1e-4)));
    }

    #[test]
    fn classical_examples() {
        let v = classical_reference_bounds(&q(1, 0.5, 0.5), 1.0).unwrap();
        assert!((v - (1.0 + libm::log(2.0)) / 0.25).abs() < 1e-12);
        assert!(classical_reference_bounds(&q(1, 0.5, 0.5), 2.0).unwrap() > v);
        assert!(classical_reference_bounds(&q(1, 0.5, 0.5), 0.5).is_err());
    }

    #[test]
    fn query_validation() {
        assert!(BoundQuery::new(0, 0.1, 0.1, Default::default()).is_err());
        assert!(BoundQuery::new(1, 1.0, 0.1, Default::default()).is_err());
        assert!(BoundQuery::new(1, 0.1, 0.0, Default::default()).is_err());
        assert!(BoundConstants::new(1.0, -2.0, 64.0).is_err());
    }

    #[test]
    fn report_on_grid_verifies() {
        for m in 1..=8 {
            for eps in [0.05, 0.1, 0.2] {
                for delta in [0.05, 0.1, 0.2] {
                    let r = bound_report(&q(m, eps, delta)).unwrap();
                    if r.elementary_in_regime {
                        assert!(r.verified_elementary, "{r:?}");
                    }
                    assert!(r.verified_rademacher, "{r:?}");
                    assert!(r.verified_solver_elementary && r.verified_solver_rademacher, "{r:?}");
                    assert!(r.k_solver_rademacher <= r.k_rademacher);
                    assert!(r.k_solver_elementary <= r.k_elementary);
                }
            }
        }
    }

    #[test]
    fn crossover_exists_for_m1() {
        let d = delta_crossover(1, 0.1, BoundConstants::default(), 1e-6, 0.9).unwrap().unwrap();
        assert!(d > 0.2 && d < 0.3, "{d}");
        assert!(delta_crossover(1, 0.1, BoundConstants::default(), 1e-6, 1e-3).unwrap().is_none());
    }

    proptest! {
        #[test]
        fn sizes_are_monotone(m in 1usize..20, eps in 0.01f64..0.9, delta in 0.01f64..0.9, f in 0.3f64..0.99) {
            let base = q(m, eps, delta);
            prop_assert!(k_elementary(&q(m + 1, eps, delta)) >= k_elementary(&base));
            prop_assert!(k_rademacher(&q(m + 1, eps, delta)) >= k_rademacher(&base));
            prop_assert!(k_elementary(&q(m, eps * f, delta)) >= k_elementary(&base));
            prop_assert!(k_rademacher(&q(m, eps * f, delta)) >= k_rademacher(&base));
            prop_assert!(k_elementary(&q(m, eps, delta * f)) >= k_elementary(&base));
            prop_assert!(k_rademacher(&q(m, eps, delta * f)) >= k_rademacher(&base));
        }

        #[test]
        fn solver_threshold_is_tight(a in 0.0f64..5000.0, b in 0.0f64..5000.0) {
            let s = solve_k_log_inequality(a, b).unwrap();
            let holds = |k: u64| (k as f64) >= a * libm::log(k as f64) + b;
            prop_assert!(holds(s.k));
            prop_assert!(s.k == 1 || !holds(s.k - 1));
            if let Some(cf) = s.closed_form {
                prop_assert!(s.k as f64 <= libm::ceil(cf).max(1.0));
            }
        }
    }
}
