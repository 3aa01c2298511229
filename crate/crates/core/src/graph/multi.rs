use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{EdgeId, VertexId};
use crate::error::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Vertex {
    /// Original vertices merged into this one (the "name tags").
    aliases: BTreeSet<VertexId>,
    incident: BTreeSet<EdgeId>,
}

/// Undirected multigraph whose edges keep their [`EdgeId`] through
/// contractions. Self-loops and parallel edges are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    /// Current endpoints, stored as `(min, max)`.
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    /// Endpoints in the input graph, indexed by edge id.
    origin: Vec<(VertexId, VertexId)>,
}

/// What a single [`MultiGraph::contract_edge`] did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub survivor: VertexId,
    pub absorbed: VertexId,
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl MultiGraph {
    /// Multigraph on vertices `1..=n`; edge `k` of `edges` gets `EdgeId(k)`.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self, Error> {
        let mut g = MultiGraph::default();
        for v in 1..=n {
            let mut aliases = BTreeSet::new();
            aliases.insert(VertexId(v));
            g.vertices.insert(VertexId(v), Vertex { aliases, incident: BTreeSet::new() });
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (a, b) = ordered(VertexId(a), VertexId(b));
            if !g.vertices.contains_key(&a) || !g.vertices.contains_key(&b) {
                return Err(Error::InvalidGraph(format!("edge {k} = {{{a}, {b}}} has an unknown endpoint")));
            }
            let id = EdgeId(k as u32);
            g.edges.insert(id, (a, b));
            g.origin.push((a, b));
            g.vertices.get_mut(&a).unwrap().incident.insert(id);
            g.vertices.get_mut(&b).unwrap().incident.insert(id);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    /// Live edges with their current endpoints, ascending by id.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges.get(&e).is_some_and(|&(a, b)| a == b)
    }

    /// Endpoints of `e` in the input graph; defined for contracted edges too.
    pub fn origin(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.origin.get(e.0 as usize).copied()
    }

    /// Number of edges the graph was created with.
    pub fn original_edge_count(&self) -> usize {
        self.origin.len()
    }

    /// Live edges incident to `v`, self-loops included.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.vertices.get(&v).into_iter().flat_map(|x| x.incident.iter().copied())
    }

    pub fn incident_set(&self, v: VertexId) -> Option<&BTreeSet<EdgeId>> {
        self.vertices.get(&v).map(|x| &x.incident)
    }

    /// The endpoint of `e` other than `v` (`v` itself for a self-loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn aliases(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.vertices.get(&v).map(|x| &x.aliases)
    }

    /// The live vertex currently carrying original vertex `original`.
    pub fn carrier_of(&self, original: VertexId) -> Option<VertexId> {
        self.vertices
            .iter()
            .find(|(_, x)| x.aliases.contains(&original))
            .map(|(&v, _)| v)
    }

    /// Deletes the non-loop edge `e` and merges its endpoints.
    ///
    /// The smaller endpoint id survives and inherits the other's alias tags.
    /// Every other edge keeps its id; parallel copies of `e` become
    /// self-loops on the survivor.
    pub fn contract_edge(&mut self, e: EdgeId) -> Result<Contraction, Error> {
        let (survivor, absorbed) = match self.edges.get(&e) {
            None => return Err(Error::Contraction { edge: e, reason: "unknown or already removed edge" }),
            Some(&(a, b)) if a == b => return Err(Error::Contraction { edge: e, reason: "edge is a self-loop" }),
            Some(&(a, b)) => (a, b),
        };
        self.edges.remove(&e);
        let gone = self.vertices.remove(&absorbed).expect("edge endpoint is live");
        let keep = self.vertices.get_mut(&survivor).expect("edge endpoint is live");
        keep.incident.remove(&e);
        keep.aliases.extend(gone.aliases);
        for f in gone.incident {
            if f == e {
                continue;
            }
            let ends = self.edges.get_mut(&f).expect("incident edge is live");
            let a = if ends.0 == absorbed { survivor } else { ends.0 };
            let b = if ends.1 == absorbed { survivor } else { ends.1 };
            *ends = ordered(a, b);
            keep.incident.insert(f);
        }
        Ok(Contraction { survivor, absorbed })
    }

    /// Every structural invariant; used by tests and debug assertions.
    pub fn check_invariants(&self) -> Result<(), Error> {
        let mut tags = BTreeSet::new();
        for (&v, x) in &self.vertices {
            for t in &x.aliases {
                if !tags.insert(*t) {
                    return Err(Error::InternalInvariant(format!("alias {t} carried twice")));
                }
            }
            for f in &x.incident {
                match self.edges.get(f) {
                    Some(&(a, b)) if a == v || b == v => {}
                    _ => return Err(Error::InternalInvariant(format!("{f} listed at {v} but not incident"))),
                }
            }
        }
        for (&f, &(a, b)) in &self.edges {
            for end in [a, b] {
                if !self.vertices.get(&end).is_some_and(|x| x.incident.contains(&f)) {
                    return Err(Error::InternalInvariant(format!("{f} endpoint {end} not live")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn contracting_a_triangle_edge_leaves_two_parallel_edges() {
        let mut g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(c, Contraction { survivor: v(1), absorbed: v(2) });
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.endpoints(EdgeId(1)), Some((v(1), v(3))));
        assert_eq!(g.endpoints(EdgeId(2)), Some((v(1), v(3))));
        assert_eq!(g.aliases(v(1)).unwrap().len(), 2);
        assert_eq!(g.origin(EdgeId(1)), Some((v(2), v(3))));
        g.check_invariants().unwrap();
    }

    #[test]
    fn parallel_copies_become_self_loops() {
        let mut g = MultiGraph::from_edges(2, &[(1, 2), (2, 1), (1, 2)]).unwrap();
        g.contract_edge(EdgeId(1)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_loop(EdgeId(0)) && g.is_loop(EdgeId(2)));
        g.check_invariants().unwrap();
    }

    #[test]
    fn contracting_a_self_loop_fails() {
        let mut g = MultiGraph::from_edges(2, &[(1, 1), (1, 2)]).unwrap();
        assert!(matches!(g.contract_edge(EdgeId(0)), Err(Error::Contraction { .. })));
        assert!(matches!(g.contract_edge(EdgeId(7)), Err(Error::Contraction { .. })));
        g.contract_edge(EdgeId(1)).unwrap();
        assert!(matches!(g.contract_edge(EdgeId(1)), Err(Error::Contraction { .. })));
    }

    #[test]
    fn carrier_follows_merges() {
        let mut g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        g.contract_edge(EdgeId(1)).unwrap();
        assert_eq!(g.carrier_of(v(3)), Some(v(2)));
        assert_eq!(g.opposite(EdgeId(0), v(2)), Some(v(1)));
    }
}
