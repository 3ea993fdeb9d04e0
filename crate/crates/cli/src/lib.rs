//! Batch runner behind the `mmw` binary: config parsing, experiment
//! drivers and CSV output.

pub mod config;
pub mod error;
pub mod format;
pub mod run;

pub use config::{ExperimentConfig, Kind, Overrides};
pub use error::{CliError, CliResult};
