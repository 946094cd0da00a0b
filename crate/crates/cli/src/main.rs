use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seaflux_cli::commands::{self, correct, flux, matchup, report, train};
use seaflux_cli::synth::{self, SynthConfig};
use seaflux_cli::{CliError, Overrides, PipelineConfig, Result};

/// Air-sea flux validation pipeline for SAR winds.
#[derive(Parser)]
#[command(name = "seaflux", version)]
struct Cli {
    /// JSON configuration file; flags given here override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the split, initialisation, shuffling and output headers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Wind column fed to the flux solver (`flux` only).
    #[arg(long, global = true)]
    wind_column: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Inputs {
    #[arg(long)]
    sar: Option<PathBuf>,
    #[arg(long)]
    buoy: Option<PathBuf>,
    #[arg(long)]
    precip: Option<PathBuf>,
    #[arg(long)]
    humidity: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Collocate the four input streams into matchups.csv.
    Matchup(Inputs),
    /// Compute fluxes for every row using one wind column.
    Flux {
        /// Matchup or corrected file (default: <out>/corrected.csv if present, else matchups.csv).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output name: fluxes_<label>.csv.
        #[arg(long)]
        label: Option<String>,
    },
    /// Train the SAR wind corrector.
    Train {
        #[arg(long)]
        matchups: Option<PathBuf>,
    },
    /// Apply the trained corrector, writing corrected.csv.
    Correct {
        #[arg(long)]
        matchups: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        split: Option<PathBuf>,
    },
    /// Statistics and plot tables from the three flux files.
    Report {
        #[arg(long)]
        buoy_fluxes: Option<PathBuf>,
        #[arg(long)]
        raw_fluxes: Option<PathBuf>,
        #[arg(long)]
        corrected_fluxes: Option<PathBuf>,
    },
    /// matchup → train → correct → flux (buoy, sar, corrected) → report.
    RunAll(Inputs),
    /// Write synthetic input streams into the output directory.
    Synth {
        #[arg(long, default_value_t = 3000)]
        matchups: usize,
        #[arg(long, default_value_t = 25)]
        buoys: usize,
    },
}

fn execute(cli: Cli) -> Result<()> {
    let inputs = match &cli.command {
        Command::Matchup(i) | Command::RunAll(i) => i,
        _ => &Inputs::default(),
    };
    let mut cfg = PipelineConfig::load(cli.config.as_deref())?;
    cfg.apply(&Overrides {
        seed: cli.seed,
        out_dir: cli.out.clone(),
        sar: inputs.sar.clone(),
        buoy: inputs.buoy.clone(),
        precip: inputs.precip.clone(),
        humidity: inputs.humidity.clone(),
    });
    cfg.validate()?;
    let out = cfg.out_dir.clone();
    std::fs::create_dir_all(&out).map_err(|source| CliError::Io {
        path: out.clone(),
        source,
    })?;
    let or = |p: &Option<PathBuf>, default: &str| p.clone().unwrap_or_else(|| out.join(default));

    match &cli.command {
        Command::Matchup(_) => matchup::run(&cfg).map(drop),
        Command::Flux { input, label } => {
            let column = cli
                .wind_column
                .as_deref()
                .ok_or_else(|| CliError::Usage("flux needs --wind-column".into()))?;
            let input = input.clone().unwrap_or_else(|| {
                let c = out.join(correct::CORRECTED_FILE);
                if c.exists() {
                    c
                } else {
                    out.join(matchup::MATCHUPS_FILE)
                }
            });
            let label = label.as_deref().unwrap_or(flux::default_label(column));
            flux::run(&cfg, &input, column, label).map(drop)
        }
        Command::Train { matchups } => {
            train::run(&cfg, &or(matchups, matchup::MATCHUPS_FILE)).map(drop)
        }
        Command::Correct {
            matchups,
            model,
            split,
        } => correct::run(
            &cfg,
            &or(matchups, matchup::MATCHUPS_FILE),
            &or(model, train::MODEL_FILE),
            &or(split, train::SPLIT_FILE),
        )
        .map(drop),
        Command::Report {
            buoy_fluxes,
            raw_fluxes,
            corrected_fluxes,
        } => {
            let names = flux::STANDARD_RUNS.map(|(_, l)| flux::file_name(l));
            report::run(
                &cfg,
                &or(buoy_fluxes, &names[0]),
                &or(raw_fluxes, &names[1]),
                &or(corrected_fluxes, &names[2]),
            )
            .map(drop)
        }
        Command::RunAll(_) => commands::run_all(&cfg).map(drop),
        Command::Synth { matchups, buoys } => {
            let data = synth::generate(&SynthConfig {
                matchups: *matchups,
                buoys: *buoys,
                seed: cfg.seed,
            });
            synth::write_inputs(&data, &out, cfg.seed).map(drop)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SEAFLUX_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seaflux: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
