//! Scenario files, solver dispatch, reports and the `mlmarket` command line.

pub mod commands;
pub mod error;
pub mod generate;
pub mod runner;
pub mod scenario;
pub mod trace;
pub mod validate;

pub use error::{CliError, Result};
pub use runner::{run, Overrides, RunReport};
pub use scenario::{build, load_scenario, Loaded, Scenario};
