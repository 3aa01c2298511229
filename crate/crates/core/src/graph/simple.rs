use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{VertexId, VertexMap};
use crate::error::Error;

/// Undirected simple graph with stable vertex ids.
///
/// Removing a vertex tombstones its id: [`SimpleGraph::add_vertex`] always
/// hands out an id larger than any id the graph has ever held.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_id: u32,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `1..=n` with no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 1..=n {
            g.insert_vertex(VertexId(v));
        }
        g
    }

    /// Graph on vertices `1..=n` with the given edges (1-based endpoints).
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self, Error> {
        let mut g = Self::with_vertices(n);
        for &(a, b) in edges {
            if !g.add_edge(VertexId(a), VertexId(b))? {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{a}, {b}}}")));
            }
        }
        Ok(g)
    }

    /// Adds a vertex with a fresh id.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_id.max(1));
        self.insert_vertex(v);
        v
    }

    /// Adds a vertex with an explicit id. Returns false if it was present.
    pub fn insert_vertex(&mut self, v: VertexId) -> bool {
        self.next_id = self.next_id.max(v.0 + 1);
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds the edge `{a, b}`; returns false if it already existed.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, Error> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at {a}")));
        }
        if !self.adj.contains_key(&a) || !self.adj.contains_key(&b) {
            return Err(Error::InvalidGraph(format!("edge {{{a}, {b}}} has an unknown endpoint")));
        }
        let fresh = self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(fresh)
    }

    /// Removes `v` and its incident edges; returns the number of edges removed.
    pub fn remove_vertex(&mut self, v: VertexId) -> usize {
        let Some(nbrs) = self.adj.remove(&v) else {
            return 0;
        };
        for u in &nbrs {
            if let Some(set) = self.adj.get_mut(u) {
                set.remove(&v);
            }
        }
        nbrs.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, nbrs)| nbrs.range(a..).map(move |&b| (a, b)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Smallest id that [`SimpleGraph::add_vertex`] may still hand out.
    pub fn next_id(&self) -> u32 {
        self.next_id.max(1)
    }

    /// Copy of the graph with every vertex renamed through `map`.
    ///
    /// Vertices missing from `map` keep their id.
    pub fn relabeled(&self, map: &VertexMap) -> SimpleGraph {
        let name = |v: VertexId| map.get(&v).copied().unwrap_or(v);
        let mut out = SimpleGraph::new();
        for v in self.vertices() {
            out.insert_vertex(name(v));
        }
        for (a, b) in self.edges() {
            let _ = out.add_edge(name(a), name(b));
        }
        out
    }

    /// Copy of the graph without vertex `v`.
    pub fn without_vertex(&self, v: VertexId) -> SimpleGraph {
        let mut out = self.clone();
        out.remove_vertex(v);
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.values().map(BTreeSet::len).collect();
        d.sort_unstable();
        d
    }
}

/// True iff `phi` is a bijection `V(g) -> V(h)` preserving adjacency and
/// non-adjacency.
pub fn validate_isomorphism(g: &SimpleGraph, h: &SimpleGraph, phi: &VertexMap) -> bool {
    if g.vertex_count() != h.vertex_count() || phi.len() != g.vertex_count() {
        return false;
    }
    let mut image = BTreeSet::new();
    for v in g.vertices() {
        match phi.get(&v) {
            Some(&w) if h.contains_vertex(w) && image.insert(w) => {}
            _ => return false,
        }
    }
    if g.edge_count() != h.edge_count() {
        return false;
    }
    g.edges().all(|(a, b)| h.has_edge(phi[&a], phi[&b]))
}
