use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{SimpleGraph, VertexId};

/// A clique gadget: `size - 1` new vertices that form a `size`-clique
/// together with their old `anchor`.
///
/// Members get consecutive ids starting at `first_member`; a member's
/// ordinal is its offset in that range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueRecord {
    pub anchor: VertexId,
    pub size: u32,
    pub first_member: VertexId,
}

impl CliqueRecord {
    pub fn member_count(&self) -> u32 {
        self.size - 1
    }

    pub fn members(&self) -> impl Iterator<Item = VertexId> + Clone {
        let first = self.first_member.0;
        (first..first + self.member_count()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= self.first_member && v.0 < self.first_member.0 + self.member_count()
    }

    pub fn member(&self, ordinal: u32) -> Option<VertexId> {
        (ordinal < self.member_count()).then(|| VertexId(self.first_member.0 + ordinal))
    }
}

/// Whether a vertex of a gadget graph is an input vertex or a clique member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Old,
    New { anchor: VertexId, size: u32, ordinal: u32 },
}

/// Structural fingerprint of an old vertex: its number of old neighbours and
/// the sorted sizes of the cliques anchored at it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AnchorSignature {
    pub old_degree: usize,
    pub clique_sizes: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct OldVertex {
    neighbors: BTreeSet<VertexId>,
    /// Keys (first member ids) of the cliques anchored here, in creation order.
    cliques: Vec<VertexId>,
}

/// The evolving graph of the isomorphism loop: surviving input ("old")
/// vertices with their induced edges, plus a registry of clique gadgets.
///
/// Clique edges are implicit. A member is adjacent exactly to the other
/// members of its clique and to its anchor, so the registry determines them;
/// [`GadgetGraph::to_simple`] materializes the full graph when needed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetGraph {
    old: BTreeMap<VertexId, OldVertex>,
    cliques: BTreeMap<VertexId, CliqueRecord>,
    next_id: u32,
    members: usize,
}

/// Counts from deleting one old vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Removal {
    pub vertices: usize,
    pub old_edges: usize,
}

impl GadgetGraph {
    /// Every vertex of `g` becomes old; no cliques.
    pub fn from_simple(g: &SimpleGraph) -> Self {
        let old = g
            .vertices()
            .map(|v| (v, OldVertex { neighbors: g.neighbors(v).collect(), cliques: Vec::new() }))
            .collect();
        GadgetGraph { old, cliques: BTreeMap::new(), next_id: g.next_id(), members: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.old.len() + self.members
    }

    pub fn is_empty(&self) -> bool {
        self.old.is_empty()
    }

    pub fn old_count(&self) -> usize {
        self.old.len()
    }

    pub fn new_count(&self) -> usize {
        self.members
    }

    pub fn old_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.old.keys().copied()
    }

    pub fn is_old(&self, v: VertexId) -> bool {
        self.old.contains_key(&v)
    }

    /// All vertices in ascending id order (old ids precede every member id).
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.old.keys().copied().chain(self.cliques.values().flat_map(CliqueRecord::members))
    }

    /// The `k`-th vertex in ascending id order.
    pub fn vertex_at(&self, mut k: usize) -> Option<VertexId> {
        if k < self.old.len() {
            return self.old.keys().nth(k).copied();
        }
        k -= self.old.len();
        for c in self.cliques.values() {
            let m = c.member_count() as usize;
            if k < m {
                return c.member(k as u32);
            }
            k -= m;
        }
        None
    }

    pub fn cliques(&self) -> impl Iterator<Item = &CliqueRecord> + '_ {
        self.cliques.values()
    }

    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }

    /// The clique containing member `v`.
    pub fn clique_of(&self, v: VertexId) -> Option<&CliqueRecord> {
        self.cliques.range(..=v).next_back().map(|(_, c)| c).filter(|c| c.contains(v))
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        if self.old.contains_key(&v) {
            return Some(VertexKind::Old);
        }
        self.clique_of(v).map(|c| VertexKind::New {
            anchor: c.anchor,
            size: c.size,
            ordinal: v.0 - c.first_member.0,
        })
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.kind(v).is_some()
    }

    pub fn old_neighbors(&self, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.old.get(&x).into_iter().flat_map(|o| o.neighbors.iter().copied())
    }

    pub fn old_degree(&self, x: VertexId) -> usize {
        self.old.get(&x).map_or(0, |o| o.neighbors.len())
    }

    /// Cliques anchored at old vertex `x`, in creation order.
    pub fn cliques_at(&self, x: VertexId) -> impl Iterator<Item = &CliqueRecord> + '_ {
        self.old
            .get(&x)
            .into_iter()
            .flat_map(|o| o.cliques.iter())
            .map(|k| &self.cliques[k])
    }

    pub fn signature(&self, x: VertexId) -> Option<AnchorSignature> {
        let o = self.old.get(&x)?;
        let mut clique_sizes: Vec<u32> = o.cliques.iter().map(|k| self.cliques[k].size).collect();
        clique_sizes.sort_unstable();
        Some(AnchorSignature { old_degree: o.neighbors.len(), clique_sizes })
    }

    /// The member with the given coordinates, if it exists.
    pub fn member(&self, anchor: VertexId, size: u32, ordinal: u32) -> Option<VertexId> {
        self.cliques_at(anchor).find(|c| c.size == size)?.member(ordinal)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        match self.kind(v) {
            Some(VertexKind::Old) => {
                let o = &self.old[&v];
                o.neighbors.len() + o.cliques.iter().map(|k| self.cliques[k].member_count() as usize).sum::<usize>()
            }
            Some(VertexKind::New { size, .. }) => size as usize - 1,
            None => 0,
        }
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        if a == b {
            return false;
        }
        match (self.kind(a), self.kind(b)) {
            (Some(VertexKind::Old), Some(VertexKind::Old)) => self.old[&a].neighbors.contains(&b),
            (Some(VertexKind::Old), Some(VertexKind::New { anchor, .. }))
            | (Some(VertexKind::New { anchor, .. }), Some(VertexKind::Old)) => {
                anchor == a || anchor == b
            }
            (Some(VertexKind::New { .. }), Some(VertexKind::New { .. })) => {
                self.clique_of(a).is_some_and(|c| c.contains(b))
            }
            _ => false,
        }
    }

    /// Attaches a fresh `size`-clique gadget to old vertex `anchor`.
    pub fn attach_clique(&mut self, anchor: VertexId, size: u32) -> CliqueRecord {
        assert!(size >= 2, "a clique gadget needs at least one new vertex");
        let record = CliqueRecord { anchor, size, first_member: VertexId(self.next_id) };
        self.next_id += record.member_count();
        self.members += record.member_count() as usize;
        self.old.get_mut(&anchor).expect("anchor must be an old vertex").cliques.push(record.first_member);
        self.cliques.insert(record.first_member, record);
        record
    }

    /// Deletes old vertex `x`, every clique anchored at it, and all incident
    /// edges.
    pub fn remove_old(&mut self, x: VertexId) -> Removal {
        let Some(o) = self.old.remove(&x) else {
            return Removal::default();
        };
        for nb in &o.neighbors {
            if let Some(n) = self.old.get_mut(nb) {
                n.neighbors.remove(&x);
            }
        }
        let mut removed = 1;
        for key in o.cliques {
            let c = self.cliques.remove(&key).expect("registered clique");
            self.members -= c.member_count() as usize;
            removed += c.member_count() as usize;
        }
        Removal { vertices: removed, old_edges: o.neighbors.len() }
    }

    /// The full simple graph, with the same vertex ids.
    pub fn to_simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in self.vertices() {
            g.insert_vertex(v);
        }
        for (&x, o) in &self.old {
            for &y in o.neighbors.range(x..) {
                let _ = g.add_edge(x, y);
            }
        }
        for c in self.cliques.values() {
            let members: Vec<VertexId> = c.members().collect();
            for (k, &a) in members.iter().enumerate() {
                let _ = g.add_edge(c.anchor, a);
                for &b in &members[k + 1..] {
                    let _ = g.add_edge(a, b);
                }
            }
        }
        g
    }
}
