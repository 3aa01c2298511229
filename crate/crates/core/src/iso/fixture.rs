//! Reconstruction of the five-vertex worked example.
//!
//! Only the two isomorphisms of the example are known, not its drawings, so
//! the graphs are recovered by exhaustive search.

use alloc::vec::Vec;

use super::enumerate::{enumerate_isomorphisms, ENUMERATION_GUARD};
use crate::error::Error;
use crate::graph::{validate_isomorphism, vertex_map, SimpleGraph, VertexId, VertexMap};

/// The two isomorphisms of the example, as `[phi1, phi2]`.
pub fn example1_isomorphisms() -> [VertexMap; 2] {
    [
        vertex_map([(1, 1), (2, 5), (3, 4), (4, 3), (5, 2)]),
        vertex_map([(1, 5), (2, 1), (3, 4), (4, 3), (5, 2)]),
    ]
}

/// The first answer of the walkthrough.
pub const EXAMPLE1_FIRST_PAIR: (VertexId, VertexId) = (VertexId(5), VertexId(2));

/// Searches five-vertex graph pairs for the example.
///
/// `H` is the image of `G` under `phi1`. A candidate must have exactly
/// `{phi1, phi2}` as isomorphisms; deleting 5 from `G` and 2 from `H` must
/// leave exactly six isomorphisms of which exactly two extend the pair
/// `(5, 2)`; and the only old neighbours receiving cliques after that first
/// pair are 4 in `G` and 3 in `H`. The lexicographically least `G` (by sorted
/// edge list) wins.
pub fn find_example1_fixture() -> Result<(SimpleGraph, SimpleGraph), Error> {
    let [phi1, phi2] = example1_isomorphisms();
    let (x, y) = EXAMPLE1_FIRST_PAIR;
    let slots: Vec<(u32, u32)> = (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
    let mut candidates: Vec<Vec<(u32, u32)>> = (0u32..1 << slots.len())
        .map(|mask| {
            slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect()
        })
        .collect();
    candidates.sort();
    for edges in candidates {
        let g = SimpleGraph::from_edges(5, &edges)?;
        let h = g.relabeled(&phi1);
        if g.neighbors(x).collect::<Vec<_>>() != [VertexId(4)] || h.neighbors(y).collect::<Vec<_>>() != [VertexId(3)] {
            continue;
        }
        let all = enumerate_isomorphisms(&g, &h, ENUMERATION_GUARD)?;
        if all.len() != 2 || !all.contains(&phi1) || !all.contains(&phi2) {
            continue;
        }
        let (naive_g, naive_h) = (g.without_vertex(x), h.without_vertex(y));
        let reduced = enumerate_isomorphisms(&naive_g, &naive_h, ENUMERATION_GUARD)?;
        if reduced.len() == 6 && compatible_extensions(&g, &h, &reduced, (x, y)) == 2 {
            return Ok((g, h));
        }
    }
    Err(Error::FixtureNotFound)
}

/// How many of `partials` become isomorphisms of `g` and `h` once `pair` is
/// added.
pub fn compatible_extensions(
    g: &SimpleGraph,
    h: &SimpleGraph,
    partials: &[VertexMap],
    pair: (VertexId, VertexId),
) -> usize {
    partials
        .iter()
        .filter(|psi| {
            let mut full = (*psi).clone();
            full.insert(pair.0, pair.1);
            validate_isomorphism(g, h, &full)
        })
        .count()
}
