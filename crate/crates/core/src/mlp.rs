//! Single-hidden-layer perceptron trained by per-instance backpropagation
//! with momentum.
//!
//! Inputs are scaled to `[-1, 1]` with ranges captured from the training
//! set. Every unit is a logistic sigmoid; the loss is the per-instance
//! squared error `½ Σ_c (o_c − y_c)²` against a one-hot target.

use std::fmt::Write as _;

use crate::bayes::parse_num;
use crate::data::{Samples, ScalingParams};
use crate::error::{Error, Result};
use crate::rng::{mix, SplitMix64};
use crate::scalar::{argmax, fmt_exact};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputNorm {
    /// Sigmoid outputs divided by their sum.
    Normalized,
    /// Softmax over the output units' net inputs.
    Softmax,
}

impl OutputNorm {
    pub fn name(self) -> &'static str {
        match self {
            OutputNorm::Normalized => "normalized",
            OutputNorm::Softmax => "softmax",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "normalized" => Some(OutputNorm::Normalized),
            "softmax" => Some(OutputNorm::Softmax),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlpConfig {
    pub hidden_units: usize,
    pub learning_rate: f64,
    pub momentum: f64,
    pub epochs: usize,
    pub init_range: f64,
    pub seed: u64,
    pub output: OutputNorm,
}

impl Default for MlpConfig {
    /// 20 hidden units (`(34 + 6) / 2`), learning rate 0.3, momentum 0.2,
    /// 500 epochs, weights initialised in `±0.05`.
    fn default() -> Self {
        MlpConfig {
            hidden_units: 20,
            learning_rate: 0.3,
            momentum: 0.2,
            epochs: 500,
            init_range: 0.05,
            seed: 1,
            output: OutputNorm::Normalized,
        }
    }
}

impl MlpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hidden_units == 0 {
            return Err(Error::Config("mlp needs at least one hidden unit".into()));
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(Error::Config("mlp learning rate must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::Config("mlp momentum must lie in [0, 1)".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("mlp needs at least one epoch".into()));
        }
        if !self.init_range.is_finite() || self.init_range < 0.0 {
            return Err(Error::Config("mlp init range must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel<T> {
    pub n_inputs: usize,
    pub n_hidden: usize,
    pub n_outputs: usize,
    /// `n_hidden × (n_inputs + 1)`, row-major, bias in the last column.
    pub hidden_weights: Vec<T>,
    /// `n_outputs × (n_hidden + 1)`, row-major, bias in the last column.
    pub output_weights: Vec<T>,
    pub scaling: ScalingParams<T>,
    pub output: OutputNorm,
}

/// Previous weight updates, carried between steps for momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct Velocity<T> {
    pub hidden: Vec<T>,
    pub output: Vec<T>,
}

impl<T: Scalar> Velocity<T> {
    pub fn zeros(model: &MlpModel<T>) -> Self {
        Velocity {
            hidden: vec![T::zero(); model.hidden_weights.len()],
            output: vec![T::zero(); model.output_weights.len()],
        }
    }
}

/// Gradient of the squared error with respect to every weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients<T> {
    pub hidden: Vec<T>,
    pub output: Vec<T>,
}

#[inline]
fn sigmoid<T: Scalar>(z: T) -> T {
    T::one() / (T::one() + (-z).exp())
}

impl<T: Scalar> MlpModel<T> {
    /// Weights uniform in `±init_range`, hidden layer first, both row-major,
    /// drawn from `SplitMix64::new(seed)`. Scaling starts as the identity on
    /// `[-1, 1]`.
    pub fn init(
        n_inputs: usize,
        n_hidden: usize,
        n_outputs: usize,
        init_range: f64,
        seed: u64,
    ) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut draw =
            |n: usize| -> Vec<T> { (0..n).map(|_| T::of(rng.symmetric(init_range))).collect() };
        let hidden_weights = draw(n_hidden * (n_inputs + 1));
        let output_weights = draw(n_outputs * (n_hidden + 1));
        MlpModel {
            n_inputs,
            n_hidden,
            n_outputs,
            hidden_weights,
            output_weights,
            scaling: ScalingParams {
                min: vec![-T::one(); n_inputs],
                max: vec![T::one(); n_inputs],
            },
            output: OutputNorm::Normalized,
        }
    }

    fn output_net(&self, hidden: &[T]) -> Vec<T> {
        let stride = self.n_hidden + 1;
        (0..self.n_outputs)
            .map(|k| {
                let w = &self.output_weights[k * stride..(k + 1) * stride];
                w[..self.n_hidden]
                    .iter()
                    .zip(hidden)
                    .fold(w[self.n_hidden], |acc, (&wi, &h)| acc + wi * h)
            })
            .collect()
    }

    fn hidden_activations(&self, x: &[T]) -> Vec<T> {
        let stride = self.n_inputs + 1;
        (0..self.n_hidden)
            .map(|j| {
                let w = &self.hidden_weights[j * stride..(j + 1) * stride];
                let net = w[..self.n_inputs]
                    .iter()
                    .zip(x)
                    .fold(w[self.n_inputs], |acc, (&wi, &xi)| acc + wi * xi);
                sigmoid(net)
            })
            .collect()
    }

    /// Hidden and output activations for already-scaled inputs.
    pub fn forward(&self, x: &[T]) -> (Vec<T>, Vec<T>) {
        debug_assert_eq!(x.len(), self.n_inputs);
        let hidden = self.hidden_activations(x);
        let outputs = self.output_net(&hidden).into_iter().map(sigmoid).collect();
        (hidden, outputs)
    }

    /// `½ Σ (o − y)²` for a one-hot target at `target`.
    pub fn squared_error(&self, x: &[T], target: usize) -> T {
        let (_, o) = self.forward(x);
        let half = T::of(0.5);
        o.iter()
            .enumerate()
            .map(|(k, &ok)| {
                let d = ok - if k == target { T::one() } else { T::zero() };
                half * d * d
            })
            .sum()
    }

    pub fn gradients(&self, x: &[T], target: usize) -> Gradients<T> {
        let (hidden, outputs) = self.forward(x);
        let one = T::one();
        let delta_out: Vec<T> = outputs
            .iter()
            .enumerate()
            .map(|(k, &o)| {
                let y = if k == target { one } else { T::zero() };
                (o - y) * o * (one - o)
            })
            .collect();

        let hs = self.n_hidden + 1;
        let mut output = vec![T::zero(); self.output_weights.len()];
        for (k, &d) in delta_out.iter().enumerate() {
            for (j, &h) in hidden.iter().enumerate() {
                output[k * hs + j] = d * h;
            }
            output[k * hs + self.n_hidden] = d;
        }

        let is = self.n_inputs + 1;
        let mut grad_hidden = vec![T::zero(); self.hidden_weights.len()];
        for (j, &h) in hidden.iter().enumerate() {
            let back: T = delta_out
                .iter()
                .enumerate()
                .map(|(k, &d)| d * self.output_weights[k * hs + j])
                .sum();
            let dj = back * h * (one - h);
            for (i, &xi) in x.iter().enumerate() {
                grad_hidden[j * is + i] = dj * xi;
            }
            grad_hidden[j * is + self.n_inputs] = dj;
        }
        Gradients {
            hidden: grad_hidden,
            output,
        }
    }

    /// One stochastic update: `Δ = −η·∇ + μ·Δ_prev`, applied to the weights
    /// and stored back into `velocity`.
    pub fn backprop_step(
        &mut self,
        x: &[T],
        target: usize,
        learning_rate: T,
        momentum: T,
        velocity: &mut Velocity<T>,
    ) {
        let g = self.gradients(x, target);
        for ((w, v), gi) in self
            .hidden_weights
            .iter_mut()
            .zip(velocity.hidden.iter_mut())
            .zip(&g.hidden)
        {
            *v = momentum * *v - learning_rate * *gi;
            *w = *w + *v;
        }
        for ((w, v), gi) in self
            .output_weights
            .iter_mut()
            .zip(velocity.output.iter_mut())
            .zip(&g.output)
        {
            *v = momentum * *v - learning_rate * *gi;
            *w = *w + *v;
        }
    }

    /// Fits scaling on `samples`, initialises from `config.seed`, then runs
    /// `config.epochs` passes of per-instance updates. Epoch `e` visits the
    /// instances in an order shuffled by `SplitMix64::new(mix(seed, e))`.
    pub fn train(samples: &Samples<T>, config: &MlpConfig) -> Result<Self> {
        config.validate()?;
        if samples.is_empty() {
            return Err(Error::NoInstances);
        }
        let scaling = ScalingParams::fit(samples);
        let inputs: Vec<Vec<T>> = samples.rows().iter().map(|r| scaling.apply(r)).collect();

        let mut model = Self::init(
            samples.n_features(),
            config.hidden_units,
            samples.n_classes(),
            config.init_range,
            config.seed,
        );
        model.scaling = scaling;
        model.output = config.output;

        let lr = T::of(config.learning_rate);
        let mu = T::of(config.momentum);
        let mut velocity = Velocity::zeros(&model);
        for epoch in 0..config.epochs {
            let mut order: Vec<usize> = (0..samples.len()).collect();
            SplitMix64::new(mix(config.seed, epoch as u64)).shuffle(&mut order);
            for i in order {
                model.backprop_step(&inputs[i], samples.label(i), lr, mu, &mut velocity);
            }
        }
        Ok(model)
    }

    /// Class probabilities for an unscaled row.
    pub fn predict_proba(&self, row: &[Option<T>]) -> Vec<T> {
        self.proba_scaled(&self.scaling.apply(row))
    }

    pub fn proba_scaled(&self, x: &[T]) -> Vec<T> {
        match self.output {
            OutputNorm::Normalized => {
                let (_, o) = self.forward(x);
                let total: T = o.iter().copied().sum();
                o.into_iter().map(|v| v / total).collect()
            }
            OutputNorm::Softmax => {
                let net = self.output_net(&self.hidden_activations(x));
                crate::bayes::normalize_log(&net)
            }
        }
    }

    pub fn predict(&self, row: &[Option<T>]) -> usize {
        argmax(&self.predict_proba(row))
    }

    /// Mean per-instance squared error over `samples`.
    pub fn mean_squared_error(&self, samples: &Samples<T>) -> T {
        let total: T = samples
            .iter()
            .map(|(row, label)| self.squared_error(&self.scaling.apply(row), label))
            .sum();
        total / T::of_usize(samples.len())
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[T]| {
            v.iter()
                .map(|&x| fmt_exact(x))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        writeln!(out, "mlp").unwrap();
        writeln!(
            out,
            "topology {} {} {}",
            self.n_inputs, self.n_hidden, self.n_outputs
        )
        .unwrap();
        writeln!(out, "output {}", self.output.name()).unwrap();
        writeln!(out, "scaling_min {}", join(&self.scaling.min)).unwrap();
        writeln!(out, "scaling_max {}", join(&self.scaling.max)).unwrap();
        for row in self.hidden_weights.chunks(self.n_inputs + 1) {
            writeln!(out, "hidden {}", join(row)).unwrap();
        }
        for row in self.output_weights.chunks(self.n_hidden + 1) {
            writeln!(out, "output_unit {}", join(row)).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        const KIND: &str = "mlp model";
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let field = |idx: usize, key: &str| -> Result<(usize, Vec<&str>)> {
            let &(no, line) = lines
                .get(idx)
                .ok_or_else(|| Error::format(KIND, idx + 1, "truncated"))?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some(key) {
                return Err(Error::format(KIND, no, format!("expected '{key}'")));
            }
            Ok((no, parts.collect()))
        };
        let numbers = |no: usize, parts: &[&str], n: usize| -> Result<Vec<T>> {
            if parts.len() != n {
                return Err(Error::format(KIND, no, format!("expected {n} values")));
            }
            parts
                .iter()
                .map(|p| parse_num::<f64>(p, KIND, no).map(T::of))
                .collect()
        };

        field(0, "mlp")?;
        let (no, topo) = field(1, "topology")?;
        if topo.len() != 3 {
            return Err(Error::format(KIND, no, "topology needs three sizes"));
        }
        let n_inputs: usize = parse_num(topo[0], KIND, no)?;
        let n_hidden: usize = parse_num(topo[1], KIND, no)?;
        let n_outputs: usize = parse_num(topo[2], KIND, no)?;
        let (no, out) = field(2, "output")?;
        let output = out
            .first()
            .and_then(|s| OutputNorm::parse(s))
            .ok_or_else(|| Error::format(KIND, no, "unknown output normalisation"))?;
        let (no, mins) = field(3, "scaling_min")?;
        let min = numbers(no, &mins, n_inputs)?;
        let (no, maxs) = field(4, "scaling_max")?;
        let max = numbers(no, &maxs, n_inputs)?;

        let expected = 5 + n_hidden + n_outputs;
        if lines.len() != expected {
            return Err(Error::format(
                KIND,
                lines.last().map_or(0, |l| l.0),
                format!("expected {expected} non-empty lines, found {}", lines.len()),
            ));
        }
        let mut hidden_weights = Vec::with_capacity(n_hidden * (n_inputs + 1));
        for j in 0..n_hidden {
            let (no, parts) = field(5 + j, "hidden")?;
            hidden_weights.extend(numbers(no, &parts, n_inputs + 1)?);
        }
        let mut output_weights = Vec::with_capacity(n_outputs * (n_hidden + 1));
        for k in 0..n_outputs {
            let (no, parts) = field(5 + n_hidden + k, "output_unit")?;
            output_weights.extend(numbers(no, &parts, n_hidden + 1)?);
        }
        Ok(MlpModel {
            n_inputs,
            n_hidden,
            n_outputs,
            hidden_weights,
            output_weights,
            scaling: ScalingParams { min, max },
            output,
        })
    }
}
