use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, MultiGraph, VertexId};

/// The two edge sets a context assigns to one vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sides {
    #[serde(rename = "L")]
    pub left: BTreeSet<EdgeId>,
    #[serde(rename = "R")]
    pub right: BTreeSet<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    L,
    R,
}

impl Sides {
    pub fn new(left: BTreeSet<EdgeId>, right: BTreeSet<EdgeId>) -> Self {
        Sides { left, right }
    }

    /// The side holding `e`, if any.
    pub fn slot_of(&self, e: EdgeId) -> Option<Slot> {
        if self.left.contains(&e) {
            Some(Slot::L)
        } else if self.right.contains(&e) {
            Some(Slot::R)
        } else {
            None
        }
    }

    pub fn get(&self, slot: Slot) -> &BTreeSet<EdgeId> {
        match slot {
            Slot::L => &self.left,
            Slot::R => &self.right,
        }
    }
}

/// Partial map from vertices to `(L, R)` pairs of disjoint incident-edge
/// sets. A Hamiltonian cycle is consistent with it when it uses exactly one
/// edge of `L(v)` and exactly one edge of `R(v)` for every mapped `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftRightContext {
    entries: BTreeMap<VertexId, Sides>,
}

impl LeftRightContext {
    /// The nowhere-defined context.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: VertexId) -> Option<&Sides> {
        self.entries.get(&v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.entries.contains_key(&v)
    }

    pub fn insert(&mut self, v: VertexId, sides: Sides) -> Option<Sides> {
        self.entries.insert(v, sides)
    }

    pub fn remove(&mut self, v: VertexId) -> Option<Sides> {
        self.entries.remove(&v)
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Sides)> + '_ {
        self.entries.iter().map(|(&v, s)| (v, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks `L(v) ∪ R(v) ⊆ E(v)` and `L(v) ∩ R(v) = ∅` for every mapped `v`.
    pub fn check_well_formed(&self, g: &MultiGraph) -> Result<(), String> {
        for (&v, sides) in &self.entries {
            let incident = g.incident_set(v).ok_or_else(|| format!("context vertex {v} is not live"))?;
            if let Some(e) = sides.left.iter().chain(&sides.right).find(|e| !incident.contains(e)) {
                return Err(format!("{e} in the context of {v} is not incident to it"));
            }
            if let Some(e) = sides.left.intersection(&sides.right).next() {
                return Err(format!("{e} lies in both L({v}) and R({v})"));
            }
        }
        Ok(())
    }

    /// Whether a cycle with edge set `cycle` satisfies the
    /// exactly-one-from-each-side condition at every mapped vertex.
    pub fn admits(&self, cycle: &BTreeSet<EdgeId>) -> bool {
        self.entries.values().all(|s| {
            s.left.intersection(cycle).count() == 1 && s.right.intersection(cycle).count() == 1
        })
    }
}
