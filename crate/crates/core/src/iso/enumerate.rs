//! Plain backtracking over vertex assignments with degree pruning.
//!
//! This route shares no code with [`super::refine`] and serves as its
//! cross-check as well as the reference enumeration of `ISO(G, H)`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{SimpleGraph, VertexId, VertexMap};

/// Default size guard for [`enumerate_isomorphisms`].
pub const ENUMERATION_GUARD: usize = 10;

struct Indexed {
    ids: Vec<VertexId>,
    matrix: Vec<Vec<bool>>,
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
    neighbor_degrees: Vec<Vec<usize>>,
}

impl Indexed {
    fn new(g: &SimpleGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let n = ids.len();
        let mut matrix = vec![vec![false; n]; n];
        let mut adj = vec![Vec::new(); n];
        for (a, b) in g.edges() {
            let (i, j) = (index[&a], index[&b]);
            matrix[i][j] = true;
            matrix[j][i] = true;
            adj[i].push(j);
            adj[j].push(i);
        }
        let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let neighbor_degrees = adj
            .iter()
            .map(|nb| {
                let mut d: Vec<usize> = nb.iter().map(|&u| degree[u]).collect();
                d.sort_unstable();
                d
            })
            .collect();
        Indexed { ids, matrix, adj, degree, neighbor_degrees }
    }
}

struct Backtracker {
    g: Indexed,
    h: Indexed,
    /// G vertices in breadth-first order; `parent[k]` is an earlier
    /// neighbour of `order[k]` when one exists.
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl Backtracker {
    fn new(g: &SimpleGraph, h: &SimpleGraph) -> Self {
        let g = Indexed::new(g);
        let h = Indexed::new(h);
        let n = g.ids.len();
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([(root, None)]);
            while let Some((v, p)) = queue.pop_front() {
                order.push(v);
                parent.push(p);
                for &u in &g.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back((u, Some(v)));
                    }
                }
            }
        }
        Backtracker { g, h, order, parent }
    }

    /// Calls `visit` on every isomorphism (indexed G -> indexed H) until it
    /// returns false.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.g.ids.len();
        if n != self.h.ids.len() || self.g.degree_sum() != self.h.degree_sum() {
            return;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.assign(0, &mut map, &mut used, visit);
    }

    fn assign(&self, pos: usize, map: &mut [usize], used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.order.len() {
            return visit(map);
        }
        let v = self.order[pos];
        let candidates: Vec<usize> = match self.parent[pos] {
            Some(p) => self.h.adj[map[p]].clone(),
            None => (0..self.h.ids.len()).collect(),
        };
        for w in candidates {
            if used[w]
                || self.g.degree[v] != self.h.degree[w]
                || self.g.neighbor_degrees[v] != self.h.neighbor_degrees[w]
            {
                continue;
            }
            let consistent = self.order[..pos]
                .iter()
                .all(|&u| self.g.matrix[v][u] == self.h.matrix[w][map[u]]);
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            let go_on = self.assign(pos + 1, map, used, visit);
            used[w] = false;
            map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn to_vertex_map(&self, map: &[usize]) -> VertexMap {
        map.iter().enumerate().map(|(v, &w)| (self.g.ids[v], self.h.ids[w])).collect()
    }
}

impl Indexed {
    fn degree_sum(&self) -> usize {
        self.degree.iter().sum()
    }
}

/// Every isomorphism from `g` onto `h`, sorted lexicographically by the
/// image sequence of `g`'s vertices in ascending order.
pub fn enumerate_isomorphisms(g: &SimpleGraph, h: &SimpleGraph, guard: usize) -> Result<Vec<VertexMap>, Error> {
    let size = g.vertex_count().max(h.vertex_count());
    if size > guard {
        return Err(Error::InstanceTooLarge { size, guard });
    }
    let bt = Backtracker::new(g, h);
    let mut out = Vec::new();
    bt.run(&mut |map| {
        out.push(bt.to_vertex_map(map));
        true
    });
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

/// The first isomorphism the backtracking search meets, if any. No size
/// guard: intended for structured graphs where pruning keeps it fast.
pub fn find_isomorphism(g: &SimpleGraph, h: &SimpleGraph) -> Option<VertexMap> {
    let bt = Backtracker::new(g, h);
    let mut found = None;
    bt.run(&mut |map| {
        found = Some(bt.to_vertex_map(map));
        false
    });
    found
}
