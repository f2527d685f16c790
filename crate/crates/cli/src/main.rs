//! `fracstab`: JSON configs in, CSV tables and JSON reports out.
//!
//! Exit codes: 0 success, 2 invalid config, 3 numerical failure, 4 blow-up.

mod commands;
mod config;
mod error;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{config_err, CliResult};
use crate::output::Context;

#[derive(Parser)]
#[command(name = "fracstab", version, about = "Fractional stability toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate Mittag-Leffler values.
    Ml(Args),
    /// Sector stability verdict for ∂_t^α u = A u.
    Classify(Args),
    /// Diffusion-driven instability window and dispersion curve.
    Turing(Args),
    /// Run an ODE or reaction–diffusion simulation.
    Simulate(Args),
    /// Fit a decay exponent or growth rate to a stored trajectory.
    Fit(Args),
}

#[derive(clap::Args)]
struct Args {
    /// JSON config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Random seed; overrides a `seed` key in the config.
    #[arg(long)]
    seed: Option<u64>,
}

fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FRACSTAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| config_err(format!("FRACSTAB_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| config_err(format!("thread pool: {e}")))
}

fn load(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(value: &Value) -> CliResult<T> {
    serde_json::from_value(value.clone()).map_err(|e| config_err(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    let (name, args) = match &cli.command {
        Command::Ml(a) => ("ml", a),
        Command::Classify(a) => ("classify", a),
        Command::Turing(a) => ("turing", a),
        Command::Simulate(a) => ("simulate", a),
        Command::Fit(a) => ("fit", a),
    };
    let config = load(&args.config)?;
    let seed = args.seed.or_else(|| config.get("seed").and_then(Value::as_u64)).unwrap_or(0);
    let config_dir = args.config.parent().map(Path::to_path_buf).unwrap_or_default();
    let ctx = Context::new(name, config.clone(), config_dir, seed, args.out.clone())?;
    match cli.command {
        Command::Ml(_) => commands::ml::run(&ctx, parse(&config)?),
        Command::Classify(_) => commands::classify::run(&ctx, parse(&config)?),
        Command::Turing(_) => commands::turing::run(&ctx, parse(&config)?),
        Command::Simulate(_) => commands::simulate::run(&ctx, parse(&config)?),
        Command::Fit(_) => commands::fit::run(&ctx, parse(&config)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
