//! Graph data model shared by both engines.

mod cycle;
mod multi;
mod simple;

use core::fmt;

use alloc::collections::BTreeMap;
use serde::{Deserialize, Serialize};

pub use cycle::{validate_hamiltonian_cycle, HamiltonianCycle};
pub use multi::{Contraction, MultiGraph};
pub use simple::{validate_isomorphism, SimpleGraph};

/// Vertex identifier. Never reused within one graph, even after deletion.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

/// Edge identifier of a [`MultiGraph`]; survives contraction unchanged.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl From<u32> for EdgeId {
    fn from(e: u32) -> Self {
        EdgeId(e)
    }
}

/// A (partial or total) vertex mapping between two graphs.
pub type VertexMap = BTreeMap<VertexId, VertexId>;

/// Builds a [`VertexMap`] from raw `(from, to)` pairs.
pub fn vertex_map<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> VertexMap {
    pairs.into_iter().map(|(a, b)| (VertexId(a), VertexId(b))).collect()
}
