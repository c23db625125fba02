//! Command-line front-end for the `exhauster` library: problem-file parsing
//! and the `exh` subcommands.

pub mod commands;
pub mod error;
pub mod problem;

pub use error::CliError;
pub use problem::{load, Problem, ProblemFile};
