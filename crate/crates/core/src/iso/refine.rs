//! Individualization-refinement search for isomorphisms of two graphs.
//!
//! Both graphs are colour-refined jointly, so colours are comparable across
//! them. A forced pair `x -> y` is imposed by giving `x` and `y` the same
//! fresh colour before refining. When refinement leaves non-singleton
//! classes the search branches on the smallest one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{SimpleGraph, VertexId, VertexMap};

pub struct Matcher {
    ids_g: Vec<VertexId>,
    ids_h: Vec<VertexId>,
    /// Joint adjacency lists; H vertices are offset by `ids_g.len()`.
    adj: Vec<Vec<usize>>,
    /// Equitable colouring of the unforced pair, `None` if unbalanced.
    base: Option<Vec<u32>>,
}

impl Matcher {
    pub fn new(g: &SimpleGraph, h: &SimpleGraph) -> Self {
        let ids_g: Vec<VertexId> = g.vertices().collect();
        let ids_h: Vec<VertexId> = h.vertices().collect();
        let ng = ids_g.len();
        let index_g: BTreeMap<VertexId, usize> = ids_g.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let index_h: BTreeMap<VertexId, usize> = ids_h.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut adj = Vec::with_capacity(ng + ids_h.len());
        for &v in &ids_g {
            adj.push(g.neighbors(v).map(|u| index_g[&u]).collect());
        }
        for &v in &ids_h {
            adj.push(h.neighbors(v).map(|u| ng + index_h[&u]).collect());
        }
        let mut m = Matcher { ids_g, ids_h, adj, base: None };
        if m.ids_g.len() == m.ids_h.len() {
            let mut colors = vec![0; m.adj.len()];
            if m.refine(&mut colors) {
                m.base = Some(colors);
            }
        }
        m
    }

    fn ng(&self) -> usize {
        self.ids_g.len()
    }

    /// Refines `colors` to the coarsest equitable colouring and reports
    /// whether every colour class has equally many G and H vertices.
    fn refine(&self, colors: &mut [u32]) -> bool {
        let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            for (v, sig) in sigs.iter().enumerate() {
                colors[v] = distinct.binary_search(&sig).unwrap() as u32;
            }
            let refined = distinct.len();
            if refined == classes {
                break;
            }
            classes = refined;
        }
        let mut balance = vec![0i64; classes];
        let ng = self.ng();
        for (v, &c) in colors.iter().enumerate() {
            balance[c as usize] += if v < ng { 1 } else { -1 };
        }
        balance.iter().all(|&b| b == 0)
    }

    fn search(&self, mut colors: Vec<u32>) -> Option<Vec<usize>> {
        if !self.refine(&mut colors) {
            return None;
        }
        let ng = self.ng();
        let classes = colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut size = vec![0usize; classes];
        for &c in &colors[..ng] {
            size[c as usize] += 1;
        }
        let target = (0..classes).filter(|&c| size[c] > 1).min_by_key(|&c| size[c]);
        let Some(target) = target else {
            let mut by_color = vec![usize::MAX; classes];
            for v in ng..colors.len() {
                by_color[colors[v] as usize] = v - ng;
            }
            let map: Vec<usize> = colors[..ng].iter().map(|&c| by_color[c as usize]).collect();
            return self.is_isomorphism(&map).then_some(map);
        };
        let x = (0..ng).find(|&v| colors[v] as usize == target).unwrap();
        let fresh = classes as u32;
        for y in (ng..colors.len()).filter(|&v| colors[v] as usize == target) {
            let mut next = colors.clone();
            next[x] = fresh;
            next[y] = fresh;
            if let Some(map) = self.search(next) {
                return Some(map);
            }
        }
        None
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        let ng = self.ng();
        (0..ng).all(|v| {
            let mut image: Vec<usize> = self.adj[v].iter().map(|&u| map[u] + ng).collect();
            image.sort_unstable();
            let mut target = self.adj[map[v] + ng].clone();
            target.sort_unstable();
            image == target
        })
    }

    fn to_vertex_map(&self, map: &[usize]) -> VertexMap {
        map.iter().enumerate().map(|(v, &w)| (self.ids_g[v], self.ids_h[w])).collect()
    }

    fn forced_search(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let base = self.base.as_ref()?;
        if base[x] != base[self.ng() + y] {
            return None;
        }
        let mut colors = base.clone();
        let fresh = colors.iter().max().map_or(0, |&c| c + 1);
        colors[x] = fresh;
        colors[self.ng() + y] = fresh;
        self.search(colors)
    }

    pub fn isomorphic(&self) -> bool {
        self.find(None).is_some()
    }

    /// Some isomorphism, optionally constrained to map `x` to `y`.
    pub fn find(&self, forced: Option<(VertexId, VertexId)>) -> Option<VertexMap> {
        let map = match forced {
            None => self.search(self.base.clone()?),
            Some((x, y)) => {
                let xi = self.ids_g.binary_search(&x).ok()?;
                let yi = self.ids_h.binary_search(&y).ok()?;
                self.forced_search(xi, yi)
            }
        }?;
        Some(self.to_vertex_map(&map))
    }

    /// True iff some isomorphism maps `x` to `y`.
    pub fn feasible(&self, x: VertexId, y: VertexId) -> bool {
        self.find(Some((x, y))).is_some()
    }

    /// Every feasible pair, as `x -> sorted images of x`.
    ///
    /// Each isomorphism found certifies all of its pairs at once, so most
    /// pairs never need their own search.
    pub fn feasible_pairs(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let ng = self.ng();
        let mut known: BTreeSet<(usize, usize)> = BTreeSet::new();
        if let Some(base) = &self.base {
            for x in 0..ng {
                for y in 0..ng {
                    if base[x] != base[ng + y] || known.contains(&(x, y)) {
                        continue;
                    }
                    if let Some(map) = self.forced_search(x, y) {
                        known.extend(map.iter().enumerate().map(|(v, &w)| (v, w)));
                    }
                }
            }
        }
        let mut out: BTreeMap<VertexId, Vec<VertexId>> =
            self.ids_g.iter().map(|&x| (x, Vec::new())).collect();
        for (x, y) in known {
            out.get_mut(&self.ids_g[x]).unwrap().push(self.ids_h[y]);
        }
        out
    }
}
