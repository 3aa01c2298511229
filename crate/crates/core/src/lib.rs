//! Reconstructing complete solutions of two NP search problems from oracles
//! that only ever reveal a single piece of a solution.
//!
//! * [`iso`] builds a full isomorphism between two isomorphic simple graphs
//!   from an oracle that names one matched vertex pair per query. Deleted
//!   vertices leave clique gadgets on their neighbours so that every later
//!   answer stays compatible with the pairs already fixed.
//! * [`hc`] builds a full Hamiltonian cycle of a multigraph from an oracle
//!   that names one edge of a cycle consistent with a left-right context,
//!   contracting the answered edge each round.
//!
//! Both engines run against the [`iso::IsoOracle`] / [`hc::HcOracle`]
//! traits. Honest, adversarial, seeded-random and planted oracle policies are
//! provided so every step of the reductions can be exercised directly.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod hc;
pub mod iso;

pub use error::{Error, OracleAnswer, OracleViolation};
pub use graph::{
    validate_hamiltonian_cycle, validate_isomorphism, EdgeId, HamiltonianCycle, MultiGraph,
    SimpleGraph, VertexId, VertexMap,
};
