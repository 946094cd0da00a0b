//! Pipeline configuration: defaults, then a JSON file, then command-line flags.

use std::path::{Path, PathBuf};

use seaflux::{MatchWindows, SolverConfig, TrainConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputPaths {
    pub sar: PathBuf,
    pub buoy: PathBuf,
    pub precip: PathBuf,
    pub humidity: PathBuf,
}

impl Default for InputPaths {
    fn default() -> Self {
        InputPaths {
            sar: "sar.csv".into(),
            buoy: "buoy.csv".into(),
            precip: "precip.csv".into(),
            humidity: "humidity.csv".into(),
        }
    }
}

/// Heights assigned to matchup rows when they are fed to the flux solver.
/// Winds are already 10 m winds; humidity comes from a 10 m product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FluxHeights {
    pub wind_m: f64,
    pub scalar_m: f64,
}

impl Default for FluxHeights {
    fn default() -> Self {
        FluxHeights {
            wind_m: 10.0,
            scalar_m: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub inputs: InputPaths,
    pub windows: MatchWindows,
    /// Network and optimizer settings. Its `seed` is replaced by the global seed.
    pub train: TrainConfig,
    pub solver: SolverConfig,
    pub heights: FluxHeights,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            inputs: InputPaths::default(),
            windows: MatchWindows::default(),
            train: TrainConfig::default(),
            solver: SolverConfig::default(),
            heights: FluxHeights::default(),
            out_dir: "out".into(),
            seed: 0,
        }
    }
}

/// Values given on the command line; each one beats the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub sar: Option<PathBuf>,
    pub buoy: Option<PathBuf>,
    pub precip: Option<PathBuf>,
    pub humidity: Option<PathBuf>,
}

impl PipelineConfig {
    /// Reads `path` if given, otherwise starts from defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(PipelineConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid config: {e}", path.display())))
    }

    pub fn apply(&mut self, o: &Overrides) {
        fn set<T: Clone>(slot: &mut T, v: &Option<T>) {
            if let Some(v) = v {
                *slot = v.clone();
            }
        }
        set(&mut self.seed, &o.seed);
        set(&mut self.out_dir, &o.out_dir);
        set(&mut self.inputs.sar, &o.sar);
        set(&mut self.inputs.buoy, &o.buoy);
        set(&mut self.inputs.precip, &o.precip);
        set(&mut self.inputs.humidity, &o.humidity);
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        let p = &self.inputs;
        let paths = [&p.sar, &p.buoy, &p.precip, &p.humidity];
        for (i, a) in paths.iter().enumerate() {
            if paths[i + 1..].contains(a) {
                return usage(format!("input path {} is used twice", a.display()));
            }
        }
        if let Err(e) = self.windows.validate() {
            return usage(e.to_string());
        }
        if let Err(e) = self.train_config().validate() {
            return usage(e.to_string());
        }
        let s = &self.solver;
        let positive = |v: f64| v > 0.0;
        if !positive(s.tolerance) || s.max_iterations == 0 || !positive(s.zeta_max) {
            return usage("solver needs tolerance > 0, max_iterations ≥ 1, zeta_max > 0".into());
        }
        let h = &self.heights;
        if !(h.wind_m > 0.0 && h.scalar_m > 0.0)
            || !(h.wind_m.is_finite() && h.scalar_m.is_finite())
        {
            return usage("flux heights must be positive".into());
        }
        Ok(())
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            seed: self.seed,
            ..self.train
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(
            &path,
            r#"{"seed": 5, "out_dir": "from_file", "train": {"epochs": 7}}"#,
        )
        .unwrap();
        let mut c = PipelineConfig::load(Some(&path)).unwrap();
        assert_eq!((c.seed, c.train.epochs), (5, 7));
        assert_eq!(c.train.learning_rate, 0.005);
        c.apply(&Overrides {
            seed: Some(9),
            ..Default::default()
        });
        assert_eq!(c.seed, 9);
        assert_eq!(c.out_dir, PathBuf::from("from_file"));
        assert_eq!(c.train_config().seed, 9);
    }

    #[test]
    fn rejects_unknown_keys_and_shared_paths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"sead": 5}"#).unwrap();
        assert!(matches!(
            PipelineConfig::load(Some(&path)),
            Err(CliError::Usage(_))
        ));

        let mut c = PipelineConfig::default();
        c.inputs.precip = c.inputs.sar.clone();
        assert!(c.validate().is_err());
    }
}
