use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tqc_cli::{run, Command, Format, RunConfig};

/// Verify toponomic holonomic gate constructions.
#[derive(Debug, Parser)]
#[command(name = "tqc", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Scenario id, gate name, or state spec (pyr:S, pyr_partner:S, bpy:S:M).
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = RunConfig::DEFAULT_STEPS)]
    steps: usize,
    #[arg(long, default_value_t = RunConfig::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = RunConfig::DEFAULT_AMPLITUDE)]
    amplitude: f64,
    #[arg(long, default_value_t = RunConfig::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        command: args.command,
        scenario: args.scenario,
        steps: args.steps,
        trials: args.trials,
        amplitude: args.amplitude,
        seed: args.seed,
        output: args.output,
        format: args.format,
    };
    match run(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("tqc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
