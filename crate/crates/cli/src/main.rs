mod commands;
mod error;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{execute, Params, RunConfig};
use error::CliError;
use params::*;

/// Geometric-phase experiments: Pancharatnam traces, polarization sweeps, Gouy phases
/// and flux quantization in π-rings. Each run writes CSV artifacts plus a `config.json`
/// echo of the resolved configuration into the output directory.
#[derive(Parser)]
#[command(name = "geophase", version)]
struct Cli {
    /// Output directory (created if missing)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized runs
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase trace of a path of states read from JSON
    Trace(TraceParams),
    /// Linear polarization rotated through its orthogonal state
    Polarization(PolarizationParams),
    /// Closed-form Gouy phase of a Gaussian beam
    Gouy(GouyParams),
    /// Gouy phase recovered from sampled Gaussian mode profiles
    ModeGouy(ModeGouyParams),
    /// Allowed fluxoid states of a ring
    RingFlux(RingFluxParams),
    /// Local energy minima of a single-junction ring
    RingEnergy(RingEnergyParams),
    /// Spontaneous flux of a π-ring across screening parameters
    BetaSweep(BetaSweepParams),
    /// Replay a run from a JSON config (e.g. a previous `config.json`)
    Run {
        /// Run config file
        config: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (params, out, seed) = match cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::config("config", format!("{}: {e}", config.display())))?;
            let cfg: RunConfig =
                serde_json::from_str(&text).map_err(|e| CliError::config("config", e.to_string()))?;
            let params = Params::from_json(&cfg.subcommand, cfg.parameters)?;
            (params, cli.out.unwrap_or(cfg.output_path), cli.seed.unwrap_or(cfg.seed))
        }
        command => {
            let params = match command {
                Command::Trace(p) => Params::Trace(p),
                Command::Polarization(p) => Params::Polarization(p),
                Command::Gouy(p) => Params::Gouy(p),
                Command::ModeGouy(p) => Params::ModeGouy(p),
                Command::RingFlux(p) => Params::RingFlux(p),
                Command::RingEnergy(p) => Params::RingEnergy(p),
                Command::BetaSweep(p) => Params::BetaSweep(p),
                Command::Run { .. } => unreachable!(),
            };
            (params, cli.out.unwrap_or_else(|| PathBuf::from(".")), cli.seed.unwrap_or(0))
        }
    };
    let artifacts = execute(params, &out, seed)?;
    output::write_atomically(&out, &artifacts)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
