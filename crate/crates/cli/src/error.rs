use std::path::PathBuf;
use thiserror::Error;
use vcdens_core::CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Schema(String),
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// 2 for schema and parameter errors, 3 for exceeded caps, 4 for I/O,
    /// 1 for computations that could not be completed.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Schema(_) | Self::Json { .. } => 2,
            Self::Io { .. } => 4,
            Self::Csv(e) if e.is_io_error() => 4,
            Self::Csv(_) => 1,
            Self::Core(e) => match e {
                CoreError::CapExceeded { .. } => 3,
                CoreError::Indeterminate(_)
                | CoreError::Degenerate(_)
                | CoreError::InsufficientSamples(_)
                | CoreError::Unsupported(_) => 1,
                _ => 2,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
