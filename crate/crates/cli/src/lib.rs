//! File formats, CSV emission and experiment orchestration for `vcdens`.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use run::{execute, run, RunOutput};
