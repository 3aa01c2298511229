use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, VertexId};

/// What an oracle said in the round that was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleAnswer {
    Pair(VertexId, VertexId),
    Edge(EdgeId),
}

impl fmt::Display for OracleAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleAnswer::Pair(x, y) => write!(f, "({x}, {y})"),
            OracleAnswer::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

/// An oracle answer that failed one of the engine's structural checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleViolation {
    /// 1-based loop (isomorphism) or step (Hamiltonian cycle) index.
    pub round: usize,
    pub answer: OracleAnswer,
    pub reason: String,
}

impl fmt::Display for OracleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {}: answer {} rejected: {}", self.round, self.answer, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("cannot contract edge {edge}: {reason}")]
    Contraction { edge: EdgeId, reason: &'static str },
    #[error("oracle violation: {0}")]
    OracleViolation(OracleViolation),
    #[error("graphs are not isomorphic")]
    NotIsomorphic,
    #[error("no Hamiltonian cycle is consistent with the context")]
    NoWitness,
    #[error("planted solution violated: {0}")]
    PlantedViolation(String),
    #[error("instance too large: {size} vertices exceeds guard {guard}")]
    InstanceTooLarge { size: usize, guard: usize },
    #[error("internal invariant failure: {0}")]
    InternalInvariant(String),
    #[error("no graph pair matches the five-vertex example")]
    FixtureNotFound,
    #[error("invalid oracle policy: {0}")]
    InvalidPolicy(String),
}

impl Error {
    pub(crate) fn violation(round: usize, answer: OracleAnswer, reason: impl Into<String>) -> Self {
        Error::OracleViolation(OracleViolation { round, answer, reason: reason.into() })
    }
}
