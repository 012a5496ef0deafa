use thiserror::Error;
use tqc_core::TqcError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("{case}: no admissible deformation after {attempts} draws (chart guard)")]
    ResamplingExhausted { case: String, attempts: usize },
    #[error(transparent)]
    Core(#[from] TqcError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot serialize report: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 2 for anything the caller can fix by changing
    /// the invocation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::UnknownScenario(_) | Self::ResamplingExhausted { .. } | Self::Io { .. } => 2,
            Self::Core(_) | Self::Serialize(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
