//! File formats, reports and sweeps on top of `hyperchar-core`.

pub mod commands;
pub mod error;
pub mod io;
pub mod sweep;
pub mod syntax;

pub use error::CliError;
