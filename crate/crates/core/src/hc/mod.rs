//! Hamiltonian cycle construction from an edge oracle.
//!
//! Each step asks the oracle for an edge on some Hamiltonian cycle that is
//! consistent with the current [`LeftRightContext`], contracts it, and
//! records on the merged vertex which incident edges continue the path on
//! each side. After `n - 1` contractions the contracted edges form a
//! Hamiltonian path and one edge from the last vertex's context closes it.

mod context;
mod engine;
mod enumerate;
mod oracle;

pub use context::{LeftRightContext, Sides, Slot};
pub use engine::{complete_hamiltonian_cycle, HcEngine, HcOutcome, HcQuery, HcStepRecord};
pub use enumerate::{enumerate_consistent_cycles, enumerate_hamiltonian_cycles, HC_ENUMERATION_GUARD};
pub use oracle::{HcOracle, HcOraclePolicy, HcPolicyKind, HcPolicyOracle};
