//! Command-line front end: `spectra <command> --config <path>`.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, Command, ConfigError, Format, RunConfig};
pub use report::Report;
pub use run::run;
