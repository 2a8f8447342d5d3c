//! Command-line front end for `mtcap-core`: graph files, JSON reports and
//! the `verify` experiments.

pub mod commands;
pub mod experiments;
pub mod format;
pub mod report;

pub use commands::{run, Cli, CliError, Outcome};
