use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::Classifier;
use crate::dichotomy::{PointSet, Trace};
use crate::{CoreError, Result};

/// Classes whose dichotomy counts are known exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineClass {
    /// `{x : w.x + b > 0}` over `R^dim`.
    LinearThreshold { dim: usize },
    /// All subsets of `domain` with at most `capacity` points. Points outside
    /// the domain are never members.
    UnionOfPoints { capacity: usize, domain: PointSet },
    /// A fixed list of subsets of `domain`, each given as its indicator trace.
    ExplicitFinite { domain: PointSet, traces: Vec<Trace> },
}

impl BaselineClass {
    pub fn linear_threshold(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(CoreError::Parameter("linear threshold class needs dim >= 1".into()));
        }
        Ok(Self::LinearThreshold { dim })
    }

    pub fn union_of_points(capacity: usize, domain: PointSet) -> Self {
        Self::UnionOfPoints { capacity, domain }
    }

    /// Traces are deduplicated; order of first appearance is kept.
    pub fn explicit_finite(domain: PointSet, traces: Vec<Trace>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut unique = Vec::with_capacity(traces.len());
        for t in traces {
            if t.len() != domain.len() {
                return Err(CoreError::LengthMismatch { expected: domain.len(), found: t.len() });
            }
            if seen.insert(t.clone()) {
                unique.push(t);
            }
        }
        Ok(Self::ExplicitFinite { domain, traces: unique })
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Self::LinearThreshold { dim } => *dim,
            Self::UnionOfPoints { domain, .. } | Self::ExplicitFinite { domain, .. } => domain.dim(),
        }
    }

    pub fn domain(&self) -> Option<&PointSet> {
        match self {
            Self::LinearThreshold { .. } => None,
            Self::UnionOfPoints { domain, .. } | Self::ExplicitFinite { domain, .. } => Some(domain),
        }
    }
}

/// Parameter selecting one member of a baseline class.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineParam {
    /// Normal vector and offset for `LinearThreshold`.
    Affine { weights: Vec<f64>, bias: f64 },
    /// Indices into the domain for `UnionOfPoints`.
    Chosen(Vec<usize>),
    /// Index into the trace list for `ExplicitFinite`.
    TraceIndex(usize),
}

fn check_param(c: &BaselineClass, p: &BaselineParam) -> Result<()> {
    match (c, p) {
        (BaselineClass::LinearThreshold { dim }, BaselineParam::Affine { weights, bias }) => {
            if weights.len() != *dim {
                return Err(CoreError::Parameter(format!(
                    "affine parameter has {} weights, class dimension is {dim}",
                    weights.len()
                )));
            }
            if !bias.is_finite() || weights.iter().any(|w| !w.is_finite()) {
                return Err(CoreError::Parameter("affine parameter must be finite".into()));
            }
            Ok(())
        }
        (BaselineClass::UnionOfPoints { capacity, domain }, BaselineParam::Chosen(idx)) => {
            if idx.len() > *capacity {
                return Err(CoreError::Parameter(format!(
                    "{} points chosen, capacity is {capacity}",
                    idx.len()
                )));
            }
            if let Some(&i) = idx.iter().find(|&&i| i >= domain.len()) {
                return Err(CoreError::Parameter(format!("domain index {i} out of range")));
            }
            Ok(())
        }
        (BaselineClass::ExplicitFinite { traces, .. }, BaselineParam::TraceIndex(i)) => {
            if *i >= traces.len() {
                return Err(CoreError::Parameter(format!("trace index {i} out of range")));
            }
            Ok(())
        }
        _ => Err(CoreError::Parameter("parameter kind does not match class kind".into())),
    }
}

pub fn baseline_membership(c: &BaselineClass, p: &BaselineParam, x: &[f64]) -> Result<bool> {
    check_param(c, p)?;
    if x.len() != c.input_dim() {
        return Err(CoreError::DimensionMismatch { expected: c.input_dim(), found: x.len() });
    }
    Ok(match (c, p) {
        (BaselineClass::LinearThreshold { .. }, BaselineParam::Affine { weights, bias }) => {
            weights.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + bias > 0.0
        }
        (BaselineClass::UnionOfPoints { domain, .. }, BaselineParam::Chosen(idx)) => {
            idx.iter().any(|&i| domain.point(i) == x)
        }
        (BaselineClass::ExplicitFinite { domain, traces }, BaselineParam::TraceIndex(i)) => {
            domain.index_of(x).is_some_and(|j| traces[*i].get(j))
        }
        _ => unreachable!("checked above"),
    })
}

/// A baseline class member, usable wherever a [`Classifier`] is expected.
#[derive(Debug, Clone, Copy)]
pub struct BaselineHypothesis<'a> {
    class: &'a BaselineClass,
    param: &'a BaselineParam,
}

impl<'a> BaselineHypothesis<'a> {
    pub fn new(class: &'a BaselineClass, param: &'a BaselineParam) -> Result<Self> {
        check_param(class, param)?;
        Ok(Self { class, param })
    }
}

impl Classifier for BaselineHypothesis<'_> {
    fn input_dim(&self) -> usize {
        self.class.input_dim()
    }

    fn classify(&self, x: &[f64]) -> Result<bool> {
        baseline_membership(self.class, self.param, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(n: usize) -> PointSet {
        PointSet::new((0..n).map(|i| vec![i as f64]).collect()).unwrap()
    }

    #[test]
    fn union_membership() {
        let c = BaselineClass::union_of_points(2, line(5));
        let p = BaselineParam::Chosen(vec![1, 3]);
        assert!(baseline_membership(&c, &p, &[1.0]).unwrap());
        assert!(baseline_membership(&c, &p, &[3.0]).unwrap());
        assert!(!baseline_membership(&c, &p, &[2.0]).unwrap());
        assert!(!baseline_membership(&c, &p, &[7.5]).unwrap());
    }

    #[test]
    fn linear_threshold_membership() {
        let c = BaselineClass::linear_threshold(2).unwrap();
        let p = BaselineParam::Affine { weights: vec![1.0, 1.0], bias: -1.0 };
        assert!(baseline_membership(&c, &p, &[1.0, 1.0]).unwrap());
        assert!(!baseline_membership(&c, &p, &[0.5, 0.5]).unwrap());
    }

    #[test]
    fn explicit_membership_and_dedup() {
        let t = |s: &str| Trace::from_bits(s.chars().map(|c| c == '1'));
        let c = BaselineClass::explicit_finite(line(3), vec![t("101"), t("011"), t("101")]).unwrap();
        let BaselineClass::ExplicitFinite { traces, .. } = &c else { unreachable!() };
        assert_eq!(traces.len(), 2);
        let p = BaselineParam::TraceIndex(1);
        assert!(!baseline_membership(&c, &p, &[0.0]).unwrap());
        assert!(baseline_membership(&c, &p, &[2.0]).unwrap());
        assert!(BaselineClass::explicit_finite(line(3), vec![t("10")]).is_err());
    }

    #[test]
    fn parameter_arity_violations() {
        let c = BaselineClass::union_of_points(2, line(5));
        assert!(baseline_membership(&c, &BaselineParam::Chosen(vec![0, 1, 2]), &[0.0]).is_err());
        assert!(baseline_membership(&c, &BaselineParam::Chosen(vec![9]), &[0.0]).is_err());
        assert!(baseline_membership(&c, &BaselineParam::TraceIndex(0), &[0.0]).is_err());
        let l = BaselineClass::linear_threshold(2).unwrap();
        let p = BaselineParam::Affine { weights: vec![1.0], bias: 0.0 };
        assert!(baseline_membership(&l, &p, &[0.0, 0.0]).is_err());
        let p = BaselineParam::Affine { weights: vec![1.0, 0.0], bias: 0.0 };
        assert!(matches!(
            baseline_membership(&l, &p, &[0.0]),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }
}
