use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::network::{init_model, loss_and_gradient_normalized, MlpModel, HIDDEN_UNITS, N_INPUTS};
use super::MlpError;

/// Network input: SAR wind (m/s), stability code as a real, precipitation (mm/h).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub sar_wind: f64,
    pub stability: f64,
    pub precip: f64,
}

impl FeatureVector {
    pub fn as_array(&self) -> [f64; N_INPUTS] {
        [self.sar_wind, self.stability, self.precip]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub train_fraction: f64,
    pub seed: u64,
    pub hidden: usize,
    /// Mini-batch size; `0` means full-batch gradient descent.
    pub batch_size: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 1500,
            learning_rate: 0.005,
            train_fraction: 0.60,
            seed: 0,
            hidden: HIDDEN_UNITS,
            batch_size: 32,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), MlpError> {
        let bad = |field, reason: &str| {
            Err(MlpError::Validation {
                field,
                reason: reason.to_string(),
            })
        };
        if self.epochs == 0 {
            return bad("epochs", "must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate", "must be positive");
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return bad("train_fraction", "must lie strictly between 0 and 1");
        }
        if self.hidden != HIDDEN_UNITS {
            return bad("hidden", "the network has exactly 100 hidden units");
        }
        Ok(())
    }
}

/// Row indices of each side of the train/test split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Trained {
    pub model: MlpModel,
    /// Training-split MSE per epoch (sample-weighted mean over its batches).
    pub history: Vec<f64>,
    pub split: Split,
}

const SPLIT_STREAM: u64 = 1;
const BATCH_STREAM: u64 = 2;

/// Seeded shuffle of `0..n`; the first `⌊fraction·n⌋` entries train.
pub fn split_indices(n: usize, train_fraction: f64, seed: u64) -> Split {
    let mut idx: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SPLIT_STREAM);
    idx.shuffle(&mut rng);
    let n_train = (train_fraction * n as f64).floor() as usize;
    let test = idx.split_off(n_train.min(n));
    Split { train: idx, test }
}

pub fn train(data: &[(FeatureVector, f64)], cfg: &TrainConfig) -> Result<Trained, MlpError> {
    cfg.validate()?;
    if data.len() < 10 {
        return Err(MlpError::Domain(format!(
            "training needs at least 10 samples, got {}",
            data.len()
        )));
    }
    let split = split_indices(data.len(), cfg.train_fraction, cfg.seed);
    if split.train.is_empty() {
        return Err(MlpError::Domain(format!(
            "train_fraction {} leaves no training rows out of {}",
            cfg.train_fraction,
            data.len()
        )));
    }

    let mut model = init_model(cfg.seed);
    let (mean, std) = feature_moments(split.train.iter().map(|&i| &data[i].0));
    model.norm_mean = mean;
    model.norm_std = std;

    let inputs: Vec<[f64; N_INPUTS]> = split
        .train
        .iter()
        .map(|&i| model.normalize(&data[i].0))
        .collect();
    let targets: Vec<f64> = split.train.iter().map(|&i| data[i].1).collect();

    // Start from the mean predictor: the hidden layer keeps its random
    // weights, the output layer starts flat at the training-target mean.
    model.w2.iter_mut().for_each(|w| *w = 0.0);
    model.b2 = targets.iter().sum::<f64>() / targets.len() as f64;

    let batch_size = match cfg.batch_size {
        0 => inputs.len(),
        b => b.min(inputs.len()),
    };
    let mut order: Vec<usize> = (0..inputs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(BATCH_STREAM);
    let mut batch_x = Vec::with_capacity(batch_size);
    let mut batch_t = Vec::with_capacity(batch_size);

    let mut history = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        if batch_size < inputs.len() {
            order.shuffle(&mut rng);
        }
        let mut sse = 0.0;
        for chunk in order.chunks(batch_size) {
            batch_x.clear();
            batch_t.clear();
            batch_x.extend(chunk.iter().map(|&i| inputs[i]));
            batch_t.extend(chunk.iter().map(|&i| targets[i]));
            let (mse, grads) = loss_and_gradient_normalized(&model, &batch_x, &batch_t);
            if !mse.is_finite() {
                return Err(MlpError::Diverged { epoch });
            }
            sse += mse * chunk.len() as f64;
            model.apply(&grads, cfg.learning_rate);
        }
        history.push(sse / inputs.len() as f64);
    }
    Ok(Trained {
        model,
        history,
        split,
    })
}

/// Population mean and standard deviation per feature. A constant feature
/// gets unit scale.
fn feature_moments<'a>(
    rows: impl Iterator<Item = &'a FeatureVector> + Clone,
) -> ([f64; N_INPUTS], [f64; N_INPUTS]) {
    let n = rows.clone().count() as f64;
    let mut mean = [0.0; N_INPUTS];
    for f in rows.clone() {
        for (m, v) in mean.iter_mut().zip(f.as_array()) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = [0.0; N_INPUTS];
    for f in rows {
        for ((s, v), m) in var.iter_mut().zip(f.as_array()).zip(mean) {
            *s += (v - m) * (v - m);
        }
    }
    let std = var.map(|s| {
        let sd = (s / n).sqrt();
        if sd > 0.0 {
            sd
        } else {
            1.0
        }
    });
    (mean, std)
}
