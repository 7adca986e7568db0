//! Binary hypotheses: layered networks with per-node activations, plus the
//! baseline classes whose growth functions are known in closed form.

mod activation;
mod baseline;
pub(crate) mod network;

pub use activation::{apply_activation, ActivationKind, ActivationSpec, Interval};
pub use baseline::{baseline_membership, BaselineClass, BaselineHypothesis, BaselineParam};
pub use network::{evaluate, Hypothesis, LayerSpec, NetworkSpec, WeightVector};

use crate::Result;

/// Anything that labels points of `R^n` with a bit.
pub trait Classifier {
    fn input_dim(&self) -> usize;

    fn classify(&self, x: &[f64]) -> Result<bool>;
}

impl Classifier for Hypothesis {
    fn input_dim(&self) -> usize {
        self.network().input_dim()
    }

    fn classify(&self, x: &[f64]) -> Result<bool> {
        evaluate(self, x)
    }
}
