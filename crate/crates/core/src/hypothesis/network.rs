use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::activation::{apply_activation, ActivationSpec};
use crate::{CoreError, Result};

/// One layer of a feed-forward network. Every node reads all outputs of the
/// previous layer (or the inputs, for the first layer) through an affine map
/// and then applies its own activation.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerSpec {
    nodes: Vec<ActivationSpec>,
}

impl LayerSpec {
    pub fn new(nodes: Vec<ActivationSpec>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(CoreError::InvalidNetwork("layer has no nodes".into()));
        }
        Ok(Self { nodes })
    }

    /// `width` nodes sharing one activation.
    pub fn uniform(width: usize, act: ActivationSpec) -> Result<Self> {
        Self::new(vec![act; width])
    }

    pub fn width(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[ActivationSpec] {
        &self.nodes
    }
}

/// Layered feed-forward topology with a single output node.
///
/// The network value is the output node's activation; the hypothesis labels
/// a point 1 exactly when that value is strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    input_dim: usize,
    layers: Vec<LayerSpec>,
    weight_count: usize,
}

impl NetworkSpec {
    pub fn new(input_dim: usize, layers: Vec<LayerSpec>) -> Result<Self> {
        if input_dim == 0 {
            return Err(CoreError::InvalidNetwork("input_dim must be positive".into()));
        }
        let Some(last) = layers.last() else {
            return Err(CoreError::InvalidNetwork("network has no layers".into()));
        };
        if last.width() != 1 {
            return Err(CoreError::InvalidNetwork(format!(
                "output layer must have exactly one node, found {}",
                last.width()
            )));
        }
        let mut fan_in = input_dim;
        let mut weight_count = 0;
        for layer in &layers {
            weight_count += layer.width() * (fan_in + 1);
            fan_in = layer.width();
        }
        Ok(Self { input_dim, layers, weight_count })
    }

    /// A single threshold unit on `R^d`: the affine threshold class with bias.
    pub fn perceptron(input_dim: usize) -> Result<Self> {
        Self::new(input_dim, vec![LayerSpec::uniform(1, ActivationSpec::threshold())?])
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    /// Number of real parameters: sum over nodes of fan-in plus one bias.
    pub fn weight_count(&self) -> usize {
        self.weight_count
    }

    pub fn is_threshold_only(&self) -> bool {
        self.layers.iter().all(|l| l.nodes.iter().all(ActivationSpec::is_threshold))
    }

    /// Fan-in of every node in forward order, used for weight layout.
    pub fn fan_ins(&self) -> impl Iterator<Item = usize> + '_ {
        let mut fan_in = self.input_dim;
        self.layers.iter().flat_map(move |l| {
            let f = fan_in;
            fan_in = l.width();
            core::iter::repeat(f).take(l.width())
        })
    }

    fn max_width(&self) -> usize {
        self.layers.iter().map(LayerSpec::width).max().unwrap_or(0).max(self.input_dim)
    }
}

/// Weights in forward order: for each node, its incoming weights followed by its bias.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<f64>> for WeightVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// A network with fixed weights: one member of the hypothesis class.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    network: NetworkSpec,
    weights: WeightVector,
}

impl Hypothesis {
    pub fn new(network: NetworkSpec, weights: WeightVector) -> Result<Self> {
        if weights.len() != network.weight_count() {
            return Err(CoreError::WeightCount { expected: network.weight_count(), found: weights.len() });
        }
        if let Some(&w) = weights.values().iter().find(|w| !w.is_finite()) {
            return Err(CoreError::NonFinite(w));
        }
        Ok(Self { network, weights })
    }

    pub fn network(&self) -> &NetworkSpec {
        &self.network
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Real-valued output of the final node.
    pub fn output_value(&self, x: &[f64]) -> Result<f64> {
        forward(&self.network, self.weights.values(), x)
    }
}

pub(crate) fn forward(net: &NetworkSpec, weights: &[f64], x: &[f64]) -> Result<f64> {
    if x.len() != net.input_dim {
        return Err(CoreError::DimensionMismatch { expected: net.input_dim, found: x.len() });
    }
    let width = net.max_width();
    let mut cur = vec![0.0; width];
    let mut next = vec![0.0; width];
    cur[..x.len()].copy_from_slice(x);
    let mut cur_len = x.len();
    let mut w = weights.iter();
    for layer in &net.layers {
        for (j, act) in layer.nodes.iter().enumerate() {
            let mut pre = 0.0;
            for &input in &cur[..cur_len] {
                pre += w.next().copied().unwrap_or(0.0) * input;
            }
            pre += w.next().copied().unwrap_or(0.0);
            next[j] = apply_activation(act, pre)?;
        }
        cur_len = layer.width();
        core::mem::swap(&mut cur, &mut next);
    }
    Ok(cur[0])
}

/// Forward pass, then binarize: 1 iff the output value is strictly positive.
pub fn evaluate(h: &Hypothesis, x: &[f64]) -> Result<bool> {
    Ok(h.output_value(x)? > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::ActivationKind;
    use proptest::prelude::*;

    fn tanh_221() -> NetworkSpec {
        NetworkSpec::new(
            2,
            vec![
                LayerSpec::uniform(2, ActivationSpec::tanh()).unwrap(),
                LayerSpec::uniform(1, ActivationSpec::tanh()).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn weight_count_is_sum_of_fan_in_plus_one() {
        assert_eq!(tanh_221().weight_count(), 2 * 3 + 3);
        assert_eq!(NetworkSpec::perceptron(2).unwrap().weight_count(), 3);
        let net = NetworkSpec::new(
            1,
            vec![
                LayerSpec::uniform(1, ActivationSpec::threshold()).unwrap(),
                LayerSpec::uniform(1, ActivationSpec::identity()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(net.weight_count(), 4);
        assert_eq!(net.fan_ins().collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_topologies() {
        assert!(NetworkSpec::new(0, vec![LayerSpec::uniform(1, ActivationSpec::threshold()).unwrap()]).is_err());
        assert!(NetworkSpec::new(2, vec![]).is_err());
        assert!(NetworkSpec::new(2, vec![LayerSpec::uniform(2, ActivationSpec::threshold()).unwrap()]).is_err());
        assert!(LayerSpec::new(vec![]).is_err());
    }

    #[test]
    fn single_threshold_unit() {
        let h = Hypothesis::new(NetworkSpec::perceptron(2).unwrap(), vec![1.0, 0.0, 0.0].into()).unwrap();
        assert!(evaluate(&h, &[1.0, 5.0]).unwrap());
        assert!(!evaluate(&h, &[-1.0, 5.0]).unwrap());
    }

    #[test]
    fn zero_weights_always_zero() {
        let net = tanh_221();
        let h = Hypothesis::new(net.clone(), WeightVector::zeros(net.weight_count())).unwrap();
        for x in [[0.0, 0.0], [3.0, -7.0], [1e6, 1e-6]] {
            assert!(!evaluate(&h, &x).unwrap());
        }
    }

    #[test]
    fn tanh_network_matches_straight_line_forward_pass() {
        // Weights and points fixed by hand; expected values from an independent
        // straight-line evaluation (tests/oracles/forward_pass.py), frozen here.
        let weights = vec![0.7, -1.3, 0.2, -0.4, 0.9, -0.1, 1.5, -2.0, 0.3];
        let h = Hypothesis::new(tanh_221(), weights.into()).unwrap();
        let v = h.output_value(&[0.5, -0.25]).unwrap();
        assert!((v - 0.980_829_835_474_914_6).abs() < 1e-12, "{v}");
        assert!(evaluate(&h, &[0.5, -0.25]).unwrap());
        let v = h.output_value(&[-1.0, 0.5]).unwrap();
        assert!((v - (-0.975_595_510_464_947_3)).abs() < 1e-12, "{v}");
        assert!(!evaluate(&h, &[-1.0, 0.5]).unwrap());
    }

    #[test]
    fn dimension_and_weight_checks() {
        let net = NetworkSpec::perceptron(2).unwrap();
        assert!(matches!(
            Hypothesis::new(net.clone(), vec![1.0].into()),
            Err(CoreError::WeightCount { expected: 3, found: 1 })
        ));
        let h = Hypothesis::new(net, vec![1.0, 1.0, 0.0].into()).unwrap();
        assert!(matches!(evaluate(&h, &[1.0]), Err(CoreError::DimensionMismatch { .. })));
    }

    #[test]
    fn polynomial_network() {
        let sq = ActivationSpec::plain(ActivationKind::Polynomial(vec![0.0, 0.0, 1.0]));
        let net = NetworkSpec::new(1, vec![LayerSpec::uniform(1, sq).unwrap()]).unwrap();
        // (2x - 1)^2 > 0 except at x = 0.5
        let h = Hypothesis::new(net, vec![2.0, -1.0].into()).unwrap();
        assert!(!evaluate(&h, &[0.5]).unwrap());
        assert!(evaluate(&h, &[0.0]).unwrap());
    }

    fn threshold_net() -> NetworkSpec {
        NetworkSpec::new(
            2,
            vec![
                LayerSpec::uniform(3, ActivationSpec::threshold()).unwrap(),
                LayerSpec::uniform(1, ActivationSpec::threshold()).unwrap(),
            ],
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn evaluate_is_pure(w in proptest::collection::vec(-2.0f64..2.0, 13), x in proptest::collection::vec(-3.0f64..3.0, 2)) {
            let net = threshold_net();
            prop_assume!(w.len() == net.weight_count());
            let h = Hypothesis::new(net, w.into()).unwrap();
            prop_assert_eq!(evaluate(&h, &x).unwrap(), evaluate(&h, &x).unwrap());
        }

        #[test]
        fn threshold_nodes_invariant_under_positive_row_scaling(
            w in proptest::collection::vec(-2.0f64..2.0, 13),
            x in proptest::collection::vec(-3.0f64..3.0, 2),
            node in 0usize..4,
            lambda in 0.01f64..100.0,
        ) {
            let net = threshold_net();
            let base = Hypothesis::new(net.clone(), w.clone().into()).unwrap();
            // node rows: three hidden rows of length 3, then the output row of length 4
            let (start, len) = if node < 3 { (node * 3, 3) } else { (9, 4) };
            let mut scaled = w;
            for v in &mut scaled[start..start + len] {
                *v *= lambda;
            }
            let scaled = Hypothesis::new(net, scaled.into()).unwrap();
            prop_assert_eq!(evaluate(&base, &x).unwrap(), evaluate(&scaled, &x).unwrap());
        }
    }
}
