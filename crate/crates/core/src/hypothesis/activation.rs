use alloc::vec::Vec;

use crate::{math, CoreError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ActivationKind {
    /// 1 if `t > 0`, else 0.
    Threshold,
    Logistic,
    Tanh,
    Relu,
    /// `c[0] + c[1] t + c[2] t^2 + ...`
    Polynomial(Vec<f64>),
    Identity,
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(CoreError::InvalidActivation("restriction bounds must be finite"));
        }
        if lo >= hi {
            return Err(CoreError::InvalidActivation("restriction needs lo < hi"));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// An activation kind, optionally restricted to an interval.
///
/// With `clamp_outside` set the activation is the restricted analytic
/// function: its usual value on `[lo, hi]` and identically zero elsewhere.
/// Without it the restriction is recorded but not applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationSpec {
    kind: ActivationKind,
    restriction: Option<Interval>,
    clamp_outside: bool,
}

impl ActivationSpec {
    pub fn new(kind: ActivationKind, restriction: Option<Interval>, clamp_outside: bool) -> Result<Self> {
        if let ActivationKind::Polynomial(c) = &kind {
            if c.is_empty() {
                return Err(CoreError::InvalidActivation("polynomial needs at least one coefficient"));
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(CoreError::InvalidActivation("polynomial coefficients must be finite"));
            }
        }
        if clamp_outside && restriction.is_none() {
            return Err(CoreError::InvalidActivation("clamp_outside requires a restriction"));
        }
        Ok(Self { kind, restriction, clamp_outside })
    }

    pub fn plain(kind: ActivationKind) -> Self {
        Self::new(kind, None, false).expect("unrestricted non-polynomial activation is always valid")
    }

    pub fn threshold() -> Self {
        Self::plain(ActivationKind::Threshold)
    }

    pub fn identity() -> Self {
        Self::plain(ActivationKind::Identity)
    }

    pub fn tanh() -> Self {
        Self::plain(ActivationKind::Tanh)
    }

    pub fn kind(&self) -> &ActivationKind {
        &self.kind
    }

    pub fn restriction(&self) -> Option<Interval> {
        self.restriction
    }

    pub fn clamp_outside(&self) -> bool {
        self.clamp_outside
    }

    pub fn is_threshold(&self) -> bool {
        matches!(self.kind, ActivationKind::Threshold)
    }
}

fn analytic_value(kind: &ActivationKind, t: f64) -> f64 {
    match kind {
        ActivationKind::Threshold => {
            if t > 0.0 {
                1.0
            } else {
                0.0
            }
        }
        ActivationKind::Logistic => 1.0 / (1.0 + math::exp(-t)),
        ActivationKind::Tanh => math::tanh(t),
        ActivationKind::Relu => {
            if t > 0.0 {
                t
            } else {
                0.0
            }
        }
        ActivationKind::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &ci| acc * t + ci),
        ActivationKind::Identity => t,
    }
}

pub fn apply_activation(act: &ActivationSpec, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(CoreError::NonFinite(t));
    }
    if act.clamp_outside {
        if let Some(r) = act.restriction {
            if !r.contains(t) {
                return Ok(0.0);
            }
        }
    }
    let v = analytic_value(&act.kind, t);
    if !v.is_finite() {
        return Err(CoreError::NonFinite(v));
    }
    Ok(v)
}
