//! JSON model files.
//!
//! Floats are written in shortest round-trip form and parsed with correct
//! rounding, so a save/load cycle reproduces every weight bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::network::{MlpModel, N_INPUTS};
use super::MlpError;

const FORMAT_TAG: &str = "seaflux-mlp";
const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    format: String,
    version: u32,
    inputs: usize,
    hidden: usize,
    outputs: usize,
    seed: u64,
    norm_mean: Vec<f64>,
    norm_std: Vec<f64>,
    w1: Vec<Vec<f64>>,
    b1: Vec<f64>,
    w2: Vec<f64>,
    b2: f64,
}

pub fn save_model(m: &MlpModel, path: impl AsRef<Path>) -> Result<(), MlpError> {
    fs::write(path, to_json(m)?)?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<MlpModel, MlpError> {
    from_json(&fs::read_to_string(path)?)
}

pub(crate) fn to_json(m: &MlpModel) -> Result<String, MlpError> {
    m.validate()?;
    let file = ModelFile {
        format: FORMAT_TAG.into(),
        version: FORMAT_VERSION,
        inputs: N_INPUTS,
        hidden: m.hidden(),
        outputs: 1,
        seed: m.seed,
        norm_mean: m.norm_mean.to_vec(),
        norm_std: m.norm_std.to_vec(),
        w1: m.w1.iter().map(|r| r.to_vec()).collect(),
        b1: m.b1.clone(),
        w2: m.w2.clone(),
        b2: m.b2,
    };
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn from_json(text: &str) -> Result<MlpModel, MlpError> {
    let f: ModelFile = serde_json::from_str(text)?;
    let invalid = |field, reason: String| Err(MlpError::Validation { field, reason });
    if f.format != FORMAT_TAG {
        return invalid(
            "format",
            format!("expected `{FORMAT_TAG}`, found `{}`", f.format),
        );
    }
    if f.version != FORMAT_VERSION {
        return invalid("version", format!("unsupported version {}", f.version));
    }
    if f.inputs != N_INPUTS {
        return invalid("inputs", format!("expected {N_INPUTS}, found {}", f.inputs));
    }
    if f.outputs != 1 {
        return invalid("outputs", format!("expected 1, found {}", f.outputs));
    }
    if f.b1.len() != f.hidden {
        return invalid(
            "b1",
            format!("length {} does not match hidden = {}", f.b1.len(), f.hidden),
        );
    }
    let fixed = |field, v: Vec<f64>| -> Result<[f64; N_INPUTS], MlpError> {
        v.try_into().map_err(|v: Vec<f64>| MlpError::Validation {
            field,
            reason: format!("expected {N_INPUTS} components, found {}", v.len()),
        })
    };
    let norm_mean = fixed("norm_mean", f.norm_mean)?;
    let norm_std = fixed("norm_std", f.norm_std)?;
    let w1 =
        f.w1.into_iter()
            .map(|row| fixed("w1", row))
            .collect::<Result<Vec<_>, _>>()?;
    let m = MlpModel {
        w1,
        b1: f.b1,
        w2: f.w2,
        b2: f.b2,
        norm_mean,
        norm_std,
        seed: f.seed,
    };
    m.validate()?;
    Ok(m)
}
