use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FeatureVector, MlpError};

pub const N_INPUTS: usize = 3;
pub const HIDDEN_UNITS: usize = 100;

/// Weights of the 3–hidden–1 network plus the input z-score parameters.
///
/// `w1` is row-major, one row of [`N_INPUTS`] weights per hidden unit.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    pub w1: Vec<[f64; N_INPUTS]>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
    pub norm_mean: [f64; N_INPUTS],
    pub norm_std: [f64; N_INPUTS],
    pub seed: u64,
}

/// Partial derivatives of the loss, laid out like [`MlpModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub w1: Vec<[f64; N_INPUTS]>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

pub fn relu(x: f64) -> f64 {
    x.max(0.0)
}

/// Glorot-uniform weights, zero biases, identity normalization.
pub fn init_model(seed: u64) -> MlpModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limit1 = (6.0 / (N_INPUTS + HIDDEN_UNITS) as f64).sqrt();
    let limit2 = (6.0 / (HIDDEN_UNITS + 1) as f64).sqrt();
    let w1 = (0..HIDDEN_UNITS)
        .map(|_| std::array::from_fn(|_| rng.random_range(-limit1..=limit1)))
        .collect();
    let w2 = (0..HIDDEN_UNITS)
        .map(|_| rng.random_range(-limit2..=limit2))
        .collect();
    MlpModel {
        w1,
        b1: vec![0.0; HIDDEN_UNITS],
        w2,
        b2: 0.0,
        norm_mean: [0.0; N_INPUTS],
        norm_std: [1.0; N_INPUTS],
        seed,
    }
}

impl MlpModel {
    pub fn hidden(&self) -> usize {
        self.b1.len()
    }

    pub fn validate(&self) -> Result<(), MlpError> {
        let invalid = |field, reason: String| Err(MlpError::Validation { field, reason });
        if self.hidden() != HIDDEN_UNITS {
            return invalid(
                "hidden",
                format!("expected {HIDDEN_UNITS} units, found {}", self.hidden()),
            );
        }
        if self.w1.len() != HIDDEN_UNITS {
            return invalid(
                "w1",
                format!("expected {HIDDEN_UNITS} rows, found {}", self.w1.len()),
            );
        }
        if self.w2.len() != HIDDEN_UNITS {
            return invalid(
                "w2",
                format!("expected {HIDDEN_UNITS} weights, found {}", self.w2.len()),
            );
        }
        if let Some(s) = self.norm_std.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return invalid(
                "norm_std",
                format!("components must be positive, found {s}"),
            );
        }
        if !self.norm_mean.iter().all(|m| m.is_finite()) {
            return invalid("norm_mean", "non-finite component".into());
        }
        let finite = self
            .w1
            .iter()
            .flatten()
            .chain(&self.b1)
            .chain(&self.w2)
            .all(|w| w.is_finite())
            && self.b2.is_finite();
        if !finite {
            return invalid("weights", "non-finite weight".into());
        }
        Ok(())
    }

    pub fn normalize(&self, f: &FeatureVector) -> [f64; N_INPUTS] {
        let raw = f.as_array();
        std::array::from_fn(|i| (raw[i] - self.norm_mean[i]) / self.norm_std[i])
    }

    /// Predicted buoy wind for one feature vector, m/s.
    pub fn forward(&self, f: &FeatureVector) -> f64 {
        let x = self.normalize(f);
        self.forward_normalized(&x)
    }

    pub(crate) fn forward_normalized(&self, x: &[f64; N_INPUTS]) -> f64 {
        self.w1
            .iter()
            .zip(&self.b1)
            .zip(&self.w2)
            .map(|((row, b), w)| w * relu(dot(row, x) + b))
            .sum::<f64>()
            + self.b2
    }

    pub(crate) fn apply(&mut self, g: &Gradients, learning_rate: f64) {
        for (row, grow) in self.w1.iter_mut().zip(&g.w1) {
            for (w, d) in row.iter_mut().zip(grow) {
                *w -= learning_rate * d;
            }
        }
        for (b, d) in self.b1.iter_mut().zip(&g.b1) {
            *b -= learning_rate * d;
        }
        for (w, d) in self.w2.iter_mut().zip(&g.w2) {
            *w -= learning_rate * d;
        }
        self.b2 -= learning_rate * g.b2;
    }
}

fn dot(a: &[f64; N_INPUTS], b: &[f64; N_INPUTS]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Mean squared error over `batch` and its exact gradient.
///
/// The ReLU derivative at exactly zero is taken as zero.
pub fn loss_and_gradient(
    m: &MlpModel,
    batch: &[(FeatureVector, f64)],
) -> Result<(f64, Gradients), MlpError> {
    if batch.is_empty() {
        return Err(MlpError::Domain("loss over an empty batch".into()));
    }
    let inputs: Vec<[f64; N_INPUTS]> = batch.iter().map(|(f, _)| m.normalize(f)).collect();
    let targets: Vec<f64> = batch.iter().map(|(_, t)| *t).collect();
    Ok(loss_and_gradient_normalized(m, &inputs, &targets))
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn loss_and_gradient_normalized(
    m: &MlpModel,
    inputs: &[[f64; N_INPUTS]],
    targets: &[f64],
) -> (f64, Gradients) {
    let hidden = m.hidden();
    let n = inputs.len() as f64;
    let mut g = Gradients {
        w1: vec![[0.0; N_INPUTS]; hidden],
        b1: vec![0.0; hidden],
        w2: vec![0.0; hidden],
        b2: 0.0,
    };
    let mut act = vec![0.0; hidden];
    let mut sse = 0.0;
    for (x, &t) in inputs.iter().zip(targets) {
        let mut y = m.b2;
        for j in 0..hidden {
            act[j] = dot(&m.w1[j], x) + m.b1[j];
            y += m.w2[j] * relu(act[j]);
        }
        let err = y - t;
        sse += err * err;
        let dy = 2.0 * err / n;
        g.b2 += dy;
        for j in 0..hidden {
            if act[j] > 0.0 {
                g.w2[j] += dy * act[j];
                let dh = dy * m.w2[j];
                g.b1[j] += dh;
                for k in 0..N_INPUTS {
                    g.w1[j][k] += dh * x[k];
                }
            }
        }
    }
    (sse / n, g)
}
