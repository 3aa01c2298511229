use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{EdgeId, MultiGraph, VertexId};

/// A Hamiltonian cycle: `edges[k]` joins `order[k]` and `order[(k + 1) % n]`.
///
/// A single-vertex graph has the vacuous cycle `order = [v]`, `edges = []`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HamiltonianCycle {
    pub order: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl HamiltonianCycle {
    /// Assembles a cycle from edges given as `(id, a, b)`.
    ///
    /// Starts at the smallest vertex and leaves it along its smaller incident
    /// edge, so equal edge sets always produce equal cycles. Returns `None`
    /// when the edges do not form one simple cycle through all their
    /// endpoints (loops are rejected).
    pub fn assemble(edges: &[(EdgeId, VertexId, VertexId)]) -> Option<HamiltonianCycle> {
        if edges.is_empty() {
            return None;
        }
        let mut at: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
        for &(e, a, b) in edges {
            if a == b {
                return None;
            }
            at.entry(a).or_default().push((e, b));
            at.entry(b).or_default().push((e, a));
        }
        if at.len() != edges.len() || at.values().any(|inc| inc.len() != 2) {
            return None;
        }
        for inc in at.values_mut() {
            inc.sort_unstable();
        }
        let start = *at.keys().next()?;
        let mut order = Vec::with_capacity(edges.len());
        let mut cycle_edges = Vec::with_capacity(edges.len());
        let (mut prev_edge, mut cur) = (None, start);
        loop {
            let &(e, next) = at[&cur].iter().find(|(f, _)| Some(*f) != prev_edge)?;
            order.push(cur);
            cycle_edges.push(e);
            prev_edge = Some(e);
            cur = next;
            if cur == start {
                break;
            }
            if order.len() > edges.len() {
                return None;
            }
        }
        (order.len() == edges.len()).then_some(HamiltonianCycle { order, edges: cycle_edges })
    }

    /// The cycle visiting `order` in `g`, taking the least unused live edge
    /// for each hop. `None` if some hop has no such edge.
    pub fn through(g: &MultiGraph, order: &[VertexId]) -> Option<HamiltonianCycle> {
        let n = order.len();
        if n < 2 {
            return Some(HamiltonianCycle { order: order.to_vec(), edges: Vec::new() });
        }
        let mut used = BTreeSet::new();
        let mut edges = Vec::with_capacity(n);
        for k in 0..n {
            let (a, b) = (order[k], order[(k + 1) % n]);
            let want = if a <= b { (a, b) } else { (b, a) };
            let e = g.incident(a).find(|&e| !used.contains(&e) && g.endpoints(e) == Some(want))?;
            used.insert(e);
            edges.push(e);
        }
        Some(HamiltonianCycle { order: order.to_vec(), edges })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Edge ids sorted ascending; the canonical key of an undirected cycle.
    pub fn edge_set(&self) -> Vec<EdgeId> {
        let mut s = self.edges.clone();
        s.sort_unstable();
        s
    }
}

/// True iff `c` visits every vertex of `g` exactly once and each hop uses a
/// distinct live edge whose current endpoints match the hop.
pub fn validate_hamiltonian_cycle(g: &MultiGraph, c: &HamiltonianCycle) -> bool {
    let n = g.vertex_count();
    if c.order.len() != n {
        return false;
    }
    let seen: BTreeSet<VertexId> = c.order.iter().copied().collect();
    if seen.len() != n || !seen.iter().all(|&v| g.contains_vertex(v)) {
        return false;
    }
    match n {
        0 => return c.edges.is_empty(),
        1 => {
            return match c.edges.as_slice() {
                [] => true,
                [e] => g.endpoints(*e) == Some((c.order[0], c.order[0])),
                _ => false,
            }
        }
        _ => {}
    }
    if c.edges.len() != n {
        return false;
    }
    let distinct: BTreeSet<EdgeId> = c.edges.iter().copied().collect();
    if distinct.len() != n {
        return false;
    }
    c.edges.iter().enumerate().all(|(k, &e)| {
        let (a, b) = (c.order[k], c.order[(k + 1) % n]);
        let want = if a <= b { (a, b) } else { (b, a) };
        g.endpoints(e) == Some(want)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn e(x: u32) -> EdgeId {
        EdgeId(x)
    }

    #[test]
    fn triangle_cycle_is_valid() {
        let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = HamiltonianCycle { order: alloc::vec![v(1), v(2), v(3)], edges: alloc::vec![e(0), e(1), e(2)] };
        assert!(validate_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn missing_vertex_is_invalid() {
        let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = HamiltonianCycle { order: alloc::vec![v(1), v(2)], edges: alloc::vec![e(0), e(0)] };
        assert!(!validate_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn chord_hop_is_invalid() {
        let g = MultiGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        // {1,3} is not an edge: no choice of edge ids can make (1,3,2,4) valid.
        for edges in [[0, 1, 2, 3], [3, 1, 0, 2], [0, 0, 0, 0]] {
            let c = HamiltonianCycle {
                order: alloc::vec![v(1), v(3), v(2), v(4)],
                edges: edges.iter().map(|&x| e(x)).collect(),
            };
            assert!(!validate_hamiltonian_cycle(&g, &c));
        }
    }

    #[test]
    fn two_vertex_cycle_needs_two_distinct_edges() {
        let g = MultiGraph::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        let ok = HamiltonianCycle { order: alloc::vec![v(1), v(2)], edges: alloc::vec![e(0), e(1)] };
        let bad = HamiltonianCycle { order: alloc::vec![v(1), v(2)], edges: alloc::vec![e(0), e(0)] };
        assert!(validate_hamiltonian_cycle(&g, &ok));
        assert!(!validate_hamiltonian_cycle(&g, &bad));
    }

    #[test]
    fn assemble_is_canonical() {
        let edges = [(e(5), v(3), v(1)), (e(2), v(1), v(2)), (e(9), v(2), v(3))];
        let c = HamiltonianCycle::assemble(&edges).unwrap();
        assert_eq!(c.order, alloc::vec![v(1), v(2), v(3)]);
        assert_eq!(c.edges, alloc::vec![e(2), e(9), e(5)]);
        let mut rev = edges;
        rev.reverse();
        assert_eq!(HamiltonianCycle::assemble(&rev), Some(c));
    }

    #[test]
    fn assemble_rejects_two_triangles() {
        let edges = [
            (e(0), v(1), v(2)),
            (e(1), v(2), v(3)),
            (e(2), v(3), v(1)),
            (e(3), v(4), v(5)),
            (e(4), v(5), v(6)),
            (e(5), v(6), v(4)),
        ];
        assert_eq!(HamiltonianCycle::assemble(&edges), None);
    }
}
