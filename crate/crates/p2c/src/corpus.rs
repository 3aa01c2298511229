//! Instance generators: exhaustive small corpora and seeded random graphs.

use std::collections::BTreeSet;

use p2c_core::graph::vertex_map;
use p2c_core::{EdgeId, HamiltonianCycle, MultiGraph, SimpleGraph, VertexId, VertexMap};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every permutation of `1..=n`, in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, left: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            extend(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

fn perm_map(perm: &[u32]) -> VertexMap {
    vertex_map(perm.iter().enumerate().map(|(k, &p)| (k as u32 + 1, p)))
}

/// All `2^(n choose 2)` simple graphs on vertices `1..=n`.
pub fn labeled_graphs(n: u32) -> Vec<SimpleGraph> {
    let slots: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    (0u64..1 << slots.len())
        .map(|mask| {
            let edges: Vec<(u32, u32)> =
                slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            SimpleGraph::from_edges(n, &edges).expect("slots are valid edges")
        })
        .collect()
}

/// Every ordered pair `(G, H)` of isomorphic labeled graphs on `n` vertices,
/// for each `n` in `0..=max_n`.
pub fn isomorphic_pairs(max_n: u32) -> Vec<(SimpleGraph, SimpleGraph)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let perms = permutations(n);
        for g in labeled_graphs(n) {
            let orbit: BTreeSet<Vec<(VertexId, VertexId)>> =
                perms.iter().map(|p| g.relabeled(&perm_map(p)).edges().collect()).collect();
            for edges in orbit {
                let pairs: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (a.0, b.0)).collect();
                out.push((g.clone(), SimpleGraph::from_edges(n, &pairs).expect("relabeling is simple")));
            }
        }
    }
    out
}

/// Erdős–Rényi `G(n, p)` on `1..=n`.
pub fn gnp<R: Rng>(n: u32, p: f64, rng: &mut R) -> SimpleGraph {
    let mut g = SimpleGraph::with_vertices(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).expect("vertices exist");
            }
        }
    }
    g
}

/// A uniformly random bijection of `1..=n` onto itself.
pub fn random_permutation<R: Rng>(n: u32, rng: &mut R) -> VertexMap {
    let mut images: Vec<u32> = (1..=n).collect();
    images.shuffle(rng);
    perm_map(&images)
}

fn canonical(n: u32, edges: &[(u32, u32)], perms: &[Vec<u32>]) -> Vec<(u32, u32)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(u32, u32)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a as usize - 1], p[b as usize - 1]);
                    (x.min(y), x.max(y))
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_else(|| {
            debug_assert_eq!(n, 0);
            Vec::new()
        })
}

/// Multisets of size `k` over `0..slots`, as nondecreasing index lists.
fn multisets(slots: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, slots: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..slots {
            cur.push(s);
            go(s, slots, k, cur, out);
            cur.pop();
        }
    }
    go(0, slots, k, &mut cur, &mut out);
    out
}

/// Every connected multigraph with `1..=max_n` vertices and at most
/// `max_edges` edges (loops and parallel edges allowed) that has a
/// Hamiltonian cycle, one per isomorphism class.
///
/// Each comes with the cycle `1, 2, ..., n` it was built around, whose
/// edges are the first ones in file order.
pub fn hamiltonian_multigraphs(max_n: u32, max_edges: usize) -> Vec<(MultiGraph, HamiltonianCycle)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let base: Vec<(u32, u32)> = match n {
            1 => Vec::new(),
            2 => vec![(1, 2), (1, 2)],
            _ => (1..=n).map(|v| (v, v % n + 1)).collect(),
        };
        if base.len() > max_edges {
            continue;
        }
        let slots: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for k in 0..=max_edges - base.len() {
            for extra in multisets(slots.len(), k) {
                let mut edges = base.clone();
                edges.extend(extra.iter().map(|&s| slots[s]));
                if !seen.insert(canonical(n, &edges, &perms)) {
                    continue;
                }
                let g = MultiGraph::from_edges(n, &edges).expect("slots are valid edges");
                let cycle = if n == 1 {
                    HamiltonianCycle { order: vec![VertexId(1)], edges: Vec::new() }
                } else {
                    let hops: Vec<(EdgeId, VertexId, VertexId)> = base
                        .iter()
                        .enumerate()
                        .map(|(k, &(a, b))| (EdgeId(k as u32), VertexId(a), VertexId(b)))
                        .collect();
                    HamiltonianCycle::assemble(&hops).expect("base edges form a cycle")
                };
                out.push((g, cycle));
            }
        }
    }
    out
}

/// A random Hamiltonian multigraph on `n >= 2` vertices: a cycle through a
/// random vertex order plus up to `max_extra` random edges (loops and
/// parallels allowed), with all edges in random file order. Returns the
/// planted cycle too.
pub fn random_hamiltonian_multigraph<R: Rng>(n: u32, max_extra: usize, rng: &mut R) -> (MultiGraph, HamiltonianCycle) {
    assert!(n >= 2);
    let mut order: Vec<u32> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges: Vec<((u32, u32), bool)> = (0..n as usize)
        .map(|k| ((order[k], order[(k + 1) % n as usize]), true))
        .collect();
    if n == 2 {
        edges[1] = ((order[1], order[0]), true);
    }
    for _ in 0..rng.gen_range(0..=max_extra) {
        edges.push(((rng.gen_range(1..=n), rng.gen_range(1..=n)), false));
    }
    edges.shuffle(rng);
    let g = MultiGraph::from_edges(n, &edges.iter().map(|&(e, _)| e).collect::<Vec<_>>()).expect("valid endpoints");
    let hops: Vec<(EdgeId, VertexId, VertexId)> = edges
        .iter()
        .enumerate()
        .filter(|(_, &(_, planted))| planted)
        .map(|(k, &((a, b), _))| (EdgeId(k as u32), VertexId(a), VertexId(b)))
        .collect();
    (g, HamiltonianCycle::assemble(&hops).expect("planted edges form a cycle"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use p2c_core::validate_hamiltonian_cycle;
    use rand::SeedableRng;

    #[test]
    fn small_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(labeled_graphs(4).len(), 64);
        // Labeled pairs: sum over classes of orbit size squared.
        // n = 3: orbits 1, 3, 3, 1 -> 1 + 9 + 9 + 1.
        let n3 = isomorphic_pairs(3).len() - isomorphic_pairs(2).len();
        assert_eq!(n3, 20);
    }

    #[test]
    fn hamiltonian_classes_on_three_vertices() {
        // Triangle alone, and triangle plus one parallel edge or one loop.
        let one_extra: Vec<_> =
            hamiltonian_multigraphs(3, 4).into_iter().filter(|(g, _)| g.vertex_count() == 3).collect();
        assert_eq!(one_extra.len(), 3);
        for (g, c) in &one_extra {
            assert!(validate_hamiltonian_cycle(g, c));
        }
    }

    #[test]
    fn random_instances_carry_their_cycle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 2..9 {
            let (g, c) = random_hamiltonian_multigraph(n, 4, &mut rng);
            assert!(validate_hamiltonian_cycle(&g, &c));
        }
    }
}
