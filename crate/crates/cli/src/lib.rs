//! Command-line front end: problem files, reports and SVG output.

pub mod commands;
pub mod error;
pub mod problem;
pub mod render;
pub mod report;

pub use commands::{run, Cli, Output};
pub use error::{CliError, CHECK_FAILED};
