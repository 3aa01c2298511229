use std::path::PathBuf;

use p2c_core::{Error, OracleViolation};
use serde::Serialize;

/// A malformed graph, solution or trace file.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Everything a command can fail with, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {source}")]
    Format { context: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("replay diverged from the recorded trace: {0}")]
    ReplayMismatch(String),
    #[error("solution is not valid for the input")]
    InvalidSolution,
}

impl CliError {
    pub fn format(context: impl Into<String>, source: impl Into<FormatError>) -> Self {
        CliError::Format { context: context.into(), source: source.into() }
    }

    /// 0 ok, 2 parse or usage, 3 oracle violation, 4 size guard,
    /// 5 internal invariant, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Format { .. } | CliError::Usage(_) => 2,
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::ReplayMismatch(_) | CliError::InvalidSolution => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Format { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => core_kind(e),
            CliError::ReplayMismatch(_) => "replay-mismatch",
            CliError::InvalidSolution => "invalid-solution",
        }
    }

    pub fn info(&self) -> ErrorInfo {
        let violation = match self {
            CliError::Core(Error::OracleViolation(v)) => Some(v.clone()),
            _ => None,
        };
        ErrorInfo { kind: self.kind().into(), message: self.to_string(), exit_code: self.exit_code(), violation }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidGraph(_) | Error::InvalidPolicy(_) => 2,
        Error::OracleViolation(_) | Error::PlantedViolation(_) => 3,
        Error::InstanceTooLarge { .. } => 4,
        Error::InternalInvariant(_) | Error::Contraction { .. } => 5,
        Error::NotIsomorphic | Error::NoWitness | Error::FixtureNotFound => 1,
    }
}

pub fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidGraph(_) => "invalid-graph",
        Error::Contraction { .. } => "contraction-error",
        Error::OracleViolation(_) => "oracle-violation",
        Error::NotIsomorphic => "not-isomorphic",
        Error::NoWitness => "no-witness",
        Error::PlantedViolation(_) => "planted-violation",
        Error::InstanceTooLarge { .. } => "instance-too-large",
        Error::InternalInvariant(_) => "internal-invariant-failure",
        Error::FixtureNotFound => "fixture-not-found",
        Error::InvalidPolicy(_) => "invalid-policy",
    }
}

/// Machine-readable error, as printed on stderr and stored in traces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub violation: Option<OracleViolation>,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        CliError::Core(e.clone()).info()
    }
}
