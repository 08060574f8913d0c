//! Library side of the `gz` command-line tool: JSON formats, seeded sampling,
//! subcommand implementations and the acceptance self-test.

pub mod commands;
pub mod error;
pub mod io;
pub mod sample;
pub mod selftest;

pub use error::{exit, CliError, CliResult};
