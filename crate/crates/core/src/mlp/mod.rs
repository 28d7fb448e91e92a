//! A minimal dense feed-forward network: exact backpropagation, full-batch
//! gradient descent, and nothing fancier. Big enough for a 2-3-1 XOR network
//! and a 256-32-30 bitmap classifier.

pub mod io;

use crate::error::{Error, Result};
use crate::rng::XorShift64Star;

/// Per-layer nonlinearity, each with the exact derivative backprop uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    HyperbolicTangent,
    LogisticSigmoid,
    Identity,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::HyperbolicTangent => x.tanh(),
            Activation::LogisticSigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Identity => x,
        }
    }

    /// Derivative expressed through the activation output `y = apply(x)`:
    /// `1 - y^2` for tanh, `y(1 - y)` for the logistic, `1` for identity.
    pub fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::HyperbolicTangent => 1.0 - y * y,
            Activation::LogisticSigmoid => y * (1.0 - y),
            Activation::Identity => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::HyperbolicTangent => "tanh",
            Activation::LogisticSigmoid => "logistic",
            Activation::Identity => "identity",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "tanh" => Some(Activation::HyperbolicTangent),
            "logistic" => Some(Activation::LogisticSigmoid),
            "identity" => Some(Activation::Identity),
            _ => None,
        }
    }
}

/// One dense layer: `out_dim × in_dim` weights, `out_dim` biases.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    weights: Vec<Vec<f64>>,
    biases: Vec<f64>,
    activation: Activation,
}

impl Layer {
    pub fn new(weights: Vec<Vec<f64>>, biases: Vec<f64>, activation: Activation) -> Result<Self> {
        if weights.len() != biases.len() || weights.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                actual: biases.len(),
            });
        }
        let in_dim = weights[0].len();
        if in_dim == 0 || weights.iter().any(|row| row.len() != in_dim) {
            return Err(Error::DimensionMismatch {
                expected: in_dim,
                actual: 0,
            });
        }
        if weights.iter().flatten().chain(&biases).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            weights,
            biases,
            activation,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn out_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }
}

/// A feed-forward network of dense layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    layers: Vec<Layer>,
}

/// Training samples: one input vector and one target vector per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    inputs: Vec<Vec<f64>>,
    targets: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(inputs: Vec<Vec<f64>>, targets: Vec<Vec<f64>>) -> Result<Self> {
        if inputs.len() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: inputs.len(),
                actual: targets.len(),
            });
        }
        if inputs.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let in_dim = inputs[0].len();
        let out_dim = targets[0].len();
        if inputs.iter().any(|x| x.len() != in_dim)
            || targets.iter().any(|t| t.len() != out_dim)
        {
            return Err(Error::DimensionMismatch {
                expected: in_dim,
                actual: out_dim,
            });
        }
        Ok(Self { inputs, targets })
    }

    /// The four-row XOR task on {0,1} inputs.
    pub fn xor() -> Dataset {
        Dataset::new(
            vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
            ],
            vec![vec![0.0], vec![1.0], vec![1.0], vec![0.0]],
        )
        .expect("static dataset is well-formed")
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[Vec<f64>] {
        &self.targets
    }

    pub fn input_dim(&self) -> usize {
        self.inputs[0].len()
    }

    pub fn target_dim(&self) -> usize {
        self.targets[0].len()
    }
}

#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub max_epochs: usize,
    pub target_loss: f64,
    pub seed: u64,
    pub init_scale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.5,
            max_epochs: 20_000,
            target_loss: 1e-3,
            seed: 1,
            init_scale: 0.5,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if !(self.learning_rate >= 0.0) || !self.learning_rate.is_finite() {
            return Err(Error::InvalidConfig("learning_rate must be finite and >= 0"));
        }
        if !(self.target_loss >= 0.0) {
            return Err(Error::InvalidConfig("target_loss must be >= 0"));
        }
        Ok(())
    }
}

/// Why training stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrainStatus {
    ReachedTargetLoss,
    MaxEpochs,
    /// The loss became non-finite; parameters are left as they were.
    Diverged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub epochs_run: usize,
    pub final_loss: f64,
    /// Loss before each epoch's update, plus the final value; entry 0 is the
    /// initial loss.
    pub loss_history: Vec<f64>,
    pub status: TrainStatus,
}

/// Parameter-shaped gradient buffers, one entry per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: Vec<LayerGradients>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<f64>,
}

impl Gradients {
    fn zeros_like(mlp: &Mlp) -> Self {
        let layers = mlp
            .layers
            .iter()
            .map(|l| LayerGradients {
                weights: vec![vec![0.0; l.in_dim()]; l.out_dim()],
                biases: vec![0.0; l.out_dim()],
            })
            .collect();
        Self { layers }
    }

    /// Structural shape check against a network.
    pub fn matches_shape(&self, mlp: &Mlp) -> bool {
        self.layers.len() == mlp.layers.len()
            && self.layers.iter().zip(&mlp.layers).all(|(g, l)| {
                g.biases.len() == l.out_dim()
                    && g.weights.len() == l.out_dim()
                    && g.weights.iter().all(|row| row.len() == l.in_dim())
            })
    }
}

impl Mlp {
    /// Seeded random network: weights and biases i.i.d. uniform in
    /// `[-init_scale, +init_scale)`, drawn from [`XorShift64Star`] layer by
    /// layer, each weight matrix row-major and then its bias vector.
    pub fn init(
        layer_sizes: &[usize],
        activations: &[Activation],
        seed: u64,
        init_scale: f64,
    ) -> Result<Mlp> {
        if layer_sizes.len() < 2 {
            return Err(Error::EmptyArchitecture);
        }
        if layer_sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidConfig("layer sizes must be positive"));
        }
        if activations.len() != layer_sizes.len() - 1 {
            return Err(Error::DimensionMismatch {
                expected: layer_sizes.len() - 1,
                actual: activations.len(),
            });
        }
        if !(init_scale >= 0.0) || !init_scale.is_finite() {
            return Err(Error::InvalidConfig("init_scale must be finite and >= 0"));
        }
        let mut rng = XorShift64Star::new(seed);
        let mut layers = Vec::with_capacity(activations.len());
        for (ell, &activation) in activations.iter().enumerate() {
            let in_dim = layer_sizes[ell];
            let out_dim = layer_sizes[ell + 1];
            let weights = (0..out_dim)
                .map(|_| (0..in_dim).map(|_| rng.next_symmetric(init_scale)).collect())
                .collect();
            let biases = (0..out_dim).map(|_| rng.next_symmetric(init_scale)).collect();
            layers.push(Layer::new(weights, biases, activation)?);
        }
        Ok(Mlp { layers })
    }

    /// Assemble a network from explicit layers; dimensions must chain.
    pub fn from_layers(layers: Vec<Layer>) -> Result<Mlp> {
        if layers.is_empty() {
            return Err(Error::EmptyArchitecture);
        }
        for pair in layers.windows(2) {
            if pair[0].out_dim() != pair[1].in_dim() {
                return Err(Error::DimensionMismatch {
                    expected: pair[0].out_dim(),
                    actual: pair[1].in_dim(),
                });
            }
        }
        Ok(Mlp { layers })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.layers[0].in_dim()];
        sizes.extend(self.layers.iter().map(Layer::out_dim));
        sizes
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().out_dim()
    }

    pub fn parameter_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.out_dim() * (l.in_dim() + 1))
            .sum()
    }

    /// All layer activations, input first and output last; backprop reuses
    /// the intermediate vectors.
    pub fn forward(&self, input: &[f64]) -> Result<Vec<Vec<f64>>> {
        if input.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                actual: input.len(),
            });
        }
        let mut activations = Vec::with_capacity(self.layers.len() + 1);
        activations.push(input.to_vec());
        for layer in &self.layers {
            let prev = activations.last().unwrap();
            let mut next = Vec::with_capacity(layer.out_dim());
            for (row, bias) in layer.weights.iter().zip(&layer.biases) {
                let pre: f64 = row.iter().zip(prev).map(|(w, a)| w * a).sum::<f64>() + bias;
                let out = layer.activation.apply(pre);
                if !out.is_finite() {
                    return Err(Error::NonFinite);
                }
                next.push(out);
            }
            activations.push(next);
        }
        Ok(activations)
    }

    /// Output of the last layer.
    pub fn predict(&self, input: &[f64]) -> Result<Vec<f64>> {
        Ok(self.forward(input)?.pop().unwrap())
    }

    /// Mean squared error with the ½ factor:
    /// `(1 / 2N) Σ_samples ‖output - target‖²`.
    pub fn loss(&self, data: &Dataset) -> Result<f64> {
        self.check_data(data)?;
        let mut total = 0.0;
        for (input, target) in data.inputs.iter().zip(&data.targets) {
            let out = self.predict(input)?;
            total += out
                .iter()
                .zip(target)
                .map(|(y, t)| (y - t) * (y - t))
                .sum::<f64>();
        }
        Ok(total / (2.0 * data.len() as f64))
    }

    /// Exact gradient of [`Mlp::loss`] with respect to every weight and bias,
    /// by reverse accumulation of per-layer deltas.
    pub fn gradient(&self, data: &Dataset) -> Result<Gradients> {
        self.check_data(data)?;
        let mut grads = Gradients::zeros_like(self);
        let n = data.len() as f64;
        for (input, target) in data.inputs.iter().zip(&data.targets) {
            let activations = self.forward(input)?;
            let output = activations.last().unwrap();

            // dL/d(output) for this sample, then walk layers backwards.
            let mut delta: Vec<f64> = output
                .iter()
                .zip(target)
                .map(|(y, t)| (y - t) / n)
                .collect();
            for (ell, layer) in self.layers.iter().enumerate().rev() {
                let out_act = &activations[ell + 1];
                let in_act = &activations[ell];
                for (j, d) in delta.iter_mut().enumerate() {
                    *d *= layer.activation.derivative_from_output(out_act[j]);
                }
                let g = &mut grads.layers[ell];
                for (j, d) in delta.iter().enumerate() {
                    g.biases[j] += d;
                    for (i, a) in in_act.iter().enumerate() {
                        g.weights[j][i] += d * a;
                    }
                }
                if ell > 0 {
                    let mut prev_delta = vec![0.0; layer.in_dim()];
                    for (j, d) in delta.iter().enumerate() {
                        for (i, w) in layer.weights[j].iter().enumerate() {
                            prev_delta[i] += w * d;
                        }
                    }
                    delta = prev_delta;
                }
            }
        }
        Ok(grads)
    }

    /// Full-batch gradient descent: `θ ← θ - η·∇L` once per epoch, stopping
    /// at `target_loss`, `max_epochs`, or a non-finite loss (reported as
    /// [`TrainStatus::Diverged`], never as an error).
    pub fn train_gd(&mut self, data: &Dataset, config: &TrainConfig) -> Result<TrainReport> {
        config.validate()?;
        self.check_data(data)?;
        let mut loss_history = Vec::new();
        let mut epochs_run = 0;
        let status = loop {
            let loss = match self.loss(data) {
                Ok(l) => l,
                Err(Error::NonFinite) => f64::NAN,
                Err(e) => return Err(e),
            };
            loss_history.push(loss);
            if !loss.is_finite() {
                break TrainStatus::Diverged;
            }
            if loss <= config.target_loss {
                break TrainStatus::ReachedTargetLoss;
            }
            if epochs_run >= config.max_epochs {
                break TrainStatus::MaxEpochs;
            }
            let grads = self.gradient(data)?;
            self.apply_step(&grads, config.learning_rate);
            epochs_run += 1;
        };
        Ok(TrainReport {
            epochs_run,
            final_loss: *loss_history.last().unwrap(),
            loss_history,
            status,
        })
    }

    fn apply_step(&mut self, grads: &Gradients, learning_rate: f64) {
        for (layer, g) in self.layers.iter_mut().zip(&grads.layers) {
            for (row, grow) in layer.weights.iter_mut().zip(&g.weights) {
                for (w, gw) in row.iter_mut().zip(grow) {
                    *w -= learning_rate * gw;
                }
            }
            for (b, gb) in layer.biases.iter_mut().zip(&g.biases) {
                *b -= learning_rate * gb;
            }
        }
    }

    fn check_data(&self, data: &Dataset) -> Result<()> {
        if data.input_dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                actual: data.input_dim(),
            });
        }
        if data.target_dim() != self.output_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.output_dim(),
                actual: data.target_dim(),
            });
        }
        Ok(())
    }
}
