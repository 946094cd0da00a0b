//! Feed-forward bias-correction network: 3 inputs, one ReLU hidden layer,
//! one linear output, trained by full-batch gradient descent.

mod io;
mod network;
mod train;

pub use io::{load_model, save_model};
pub use network::{
    init_model, loss_and_gradient, relu, Gradients, MlpModel, HIDDEN_UNITS, N_INPUTS,
};
pub use train::{split_indices, train, FeatureVector, Split, TrainConfig, Trained};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MlpError {
    #[error("{0}")]
    Domain(String),
    #[error("training diverged: non-finite loss at epoch {epoch}")]
    Diverged { epoch: usize },
    #[error("invalid model field `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },
    #[error("malformed model file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("model file i/o: {0}")]
    Io(#[from] std::io::Error),
}
