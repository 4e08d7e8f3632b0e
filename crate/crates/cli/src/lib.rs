//! Library half of the `qtrig` command-line tool.

pub mod angle;
pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod polygon_file;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::{exit, CliError};
