use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Synthesize,
    Constellation,
    Robustness,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Verify => "verify",
            Self::Synthesize => "synthesize",
            Self::Constellation => "constellation",
            Self::Robustness => "robustness",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub scenario: String,
    pub steps: usize,
    pub trials: usize,
    pub amplitude: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub const DEFAULT_STEPS: usize = 1000;
    pub const DEFAULT_TRIALS: usize = 20;
    pub const DEFAULT_AMPLITUDE: f64 = 1.0;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(command: Command, scenario: impl Into<String>) -> Self {
        Self {
            command,
            scenario: scenario.into(),
            steps: Self::DEFAULT_STEPS,
            trials: Self::DEFAULT_TRIALS,
            amplitude: Self::DEFAULT_AMPLITUDE,
            seed: Self::DEFAULT_SEED,
            output: None,
            format: Format::Json,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.steps < tqc_core::holonomy::MIN_STEPS {
            return Err(CliError::Config(format!("--steps must be at least 10, got {}", self.steps)));
        }
        if self.trials < 1 {
            return Err(CliError::Config("--trials must be at least 1".into()));
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(CliError::Config(format!("--amplitude must be finite and >= 0, got {}", self.amplitude)));
        }
        Ok(())
    }
}
