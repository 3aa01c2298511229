//! File formats, traces and the command-line driver around `p2c-core`.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod graph6;
pub mod json;
pub mod trace;

pub use error::{CliError, ErrorInfo, FormatError};
