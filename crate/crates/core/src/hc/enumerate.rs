//! Exhaustive enumeration of Hamiltonian cycles consistent with a context.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::context::LeftRightContext;
use crate::error::Error;
use crate::graph::{EdgeId, HamiltonianCycle, MultiGraph, VertexId};

/// Default vertex guard for [`enumerate_consistent_cycles`].
pub const HC_ENUMERATION_GUARD: usize = 9;

struct Search<'a> {
    g: &'a MultiGraph,
    index: BTreeMap<VertexId, usize>,
    /// Non-loop incident edges per vertex index: `(edge, other end)`.
    out: Vec<Vec<(EdgeId, usize)>>,
    /// Context side membership per vertex index: edge -> 0 (L) or 1 (R).
    sides: Vec<Option<BTreeMap<EdgeId, usize>>>,
    counts: Vec<[u8; 2]>,
    visited: Vec<bool>,
    path: Vec<EdgeId>,
    found: BTreeSet<Vec<EdgeId>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a MultiGraph, ctx: &LeftRightContext) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut out = vec![Vec::new(); ids.len()];
        for (e, a, b) in g.edges() {
            if a != b {
                out[index[&a]].push((e, index[&b]));
                out[index[&b]].push((e, index[&a]));
            }
        }
        let sides = ids
            .iter()
            .map(|&v| {
                ctx.get(v).map(|s| {
                    s.left.iter().map(|&e| (e, 0)).chain(s.right.iter().map(|&e| (e, 1))).collect()
                })
            })
            .collect();
        Search {
            g,
            index,
            out,
            sides,
            counts: vec![[0, 0]; ids.len()],
            visited: vec![false; ids.len()],
            path: Vec::new(),
            found: BTreeSet::new(),
        }
    }

    /// Records `e` at vertex `v`; false once a side is used twice.
    fn mark(&mut self, v: usize, e: EdgeId, delta: i8) -> bool {
        if let Some(side) = self.sides[v].as_ref().and_then(|s| s.get(&e)) {
            let c = &mut self.counts[v][*side];
            *c = (*c as i8 + delta) as u8;
            return *c <= 1;
        }
        true
    }

    fn complete_at(&self, v: usize) -> bool {
        self.sides[v].is_none() || self.counts[v] == [1, 1]
    }

    fn walk(&mut self, cur: usize, depth: usize) {
        let n = self.out.len();
        let candidates = self.out[cur].clone();
        for (e, next) in candidates {
            if self.path.contains(&e) {
                continue;
            }
            let closing = depth == n && next == 0;
            if !closing && self.visited[next] {
                continue;
            }
            let ok_cur = self.mark(cur, e, 1);
            let ok_next = self.mark(next, e, 1);
            self.path.push(e);
            // The start vertex gets its second edge only when the cycle closes.
            let leaving_ok = cur == 0 || self.complete_at(cur);
            if ok_cur && ok_next && leaving_ok {
                if closing {
                    // Each cycle is met once per direction; keep the one
                    // that leaves the start along its smaller edge.
                    if self.path[0] < e && self.complete_at(0) {
                        let mut key = self.path.clone();
                        key.sort_unstable();
                        self.found.insert(key);
                    }
                } else if depth < n {
                    self.visited[next] = true;
                    self.walk(next, depth + 1);
                    self.visited[next] = false;
                }
            }
            self.path.pop();
            self.mark(cur, e, -1);
            self.mark(next, e, -1);
        }
    }
}

/// Every Hamiltonian cycle of `g` consistent with `ctx`, one per edge set,
/// sorted by ascending edge-id set.
pub fn enumerate_consistent_cycles(
    g: &MultiGraph,
    ctx: &LeftRightContext,
    guard: usize,
) -> Result<Vec<HamiltonianCycle>, Error> {
    let n = g.vertex_count();
    if n > guard {
        return Err(Error::InstanceTooLarge { size: n, guard });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        // The one-vertex cycle closes through a self-loop.
        let v = g.vertices().next().unwrap();
        return Ok(g
            .incident(v)
            .filter(|&e| ctx.admits(&BTreeSet::from([e])))
            .map(|e| HamiltonianCycle { order: vec![v], edges: vec![e] })
            .collect());
    }
    let mut search = Search::new(g, ctx);
    search.visited[0] = true;
    search.walk(0, 1);
    let _ = &search.index;
    Ok(search
        .found
        .into_iter()
        .map(|key| {
            let edges: Vec<(EdgeId, VertexId, VertexId)> = key
                .iter()
                .map(|&e| {
                    let (a, b) = search.g.endpoints(e).unwrap();
                    (e, a, b)
                })
                .collect();
            HamiltonianCycle::assemble(&edges).expect("enumerated edge set is a cycle")
        })
        .collect())
}

/// Every Hamiltonian cycle of `g`, ignoring any context.
pub fn enumerate_hamiltonian_cycles(g: &MultiGraph, guard: usize) -> Result<Vec<HamiltonianCycle>, Error> {
    enumerate_consistent_cycles(g, &LeftRightContext::new(), guard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_hamiltonian_cycle;
    use crate::hc::context::Sides;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn triangle_has_one_cycle() {
        let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let all = enumerate_hamiltonian_cycles(&g, HC_ENUMERATION_GUARD).unwrap();
        assert_eq!(all.len(), 1);
        assert!(validate_hamiltonian_cycle(&g, &all[0]));
    }

    #[test]
    fn empty_right_side_admits_nothing() {
        let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let mut ctx = LeftRightContext::new();
        ctx.insert(VertexId(1), Sides::new(BTreeSet::from([EdgeId(0)]), BTreeSet::new()));
        assert!(enumerate_consistent_cycles(&g, &ctx, HC_ENUMERATION_GUARD).unwrap().is_empty());
    }

    #[test]
    fn context_at_the_start_vertex() {
        let g = MultiGraph::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        let mut ctx = LeftRightContext::new();
        ctx.insert(VertexId(1), Sides::new(BTreeSet::from([EdgeId(0)]), BTreeSet::from([EdgeId(1)])));
        assert_eq!(enumerate_consistent_cycles(&g, &ctx, HC_ENUMERATION_GUARD).unwrap().len(), 1);
        ctx.insert(VertexId(1), Sides::new(BTreeSet::from([EdgeId(0), EdgeId(1)]), BTreeSet::new()));
        assert!(enumerate_consistent_cycles(&g, &ctx, HC_ENUMERATION_GUARD).unwrap().is_empty());
    }

    #[test]
    fn k4_has_three_cycles() {
        let all = enumerate_hamiltonian_cycles(&k4(), HC_ENUMERATION_GUARD).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|c| validate_hamiltonian_cycle(&k4(), c)));
    }

    #[test]
    fn parallel_edges_multiply_cycles() {
        let g = MultiGraph::from_edges(2, &[(1, 2), (1, 2), (1, 2), (1, 1)]).unwrap();
        assert_eq!(enumerate_hamiltonian_cycles(&g, HC_ENUMERATION_GUARD).unwrap().len(), 3);
        let tri = MultiGraph::from_edges(3, &[(1, 2), (1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(enumerate_hamiltonian_cycles(&tri, HC_ENUMERATION_GUARD).unwrap().len(), 2);
    }

    #[test]
    fn guard_is_enforced() {
        let g = MultiGraph::from_edges(10, &[]).unwrap();
        assert_eq!(
            enumerate_hamiltonian_cycles(&g, HC_ENUMERATION_GUARD),
            Err(Error::InstanceTooLarge { size: 10, guard: 9 })
        );
    }

    #[test]
    fn single_vertex_cycles_are_self_loops() {
        let g = MultiGraph::from_edges(1, &[(1, 1), (1, 1)]).unwrap();
        assert_eq!(enumerate_hamiltonian_cycles(&g, HC_ENUMERATION_GUARD).unwrap().len(), 2);
    }
}
