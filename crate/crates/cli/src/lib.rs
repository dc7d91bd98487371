//! Command-line front end for the colour3 engine.

pub mod commands;
pub mod config;
pub mod verify;

pub use commands::{CliError, Source};
pub use config::{Format, Overrides, RunConfig};
