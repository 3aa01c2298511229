use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gadget::{GadgetGraph, VertexKind};
use super::refine::Matcher;
use crate::error::Error;
use crate::graph::{validate_isomorphism, SimpleGraph, VertexId, VertexMap};

/// Largest gadget graph the search-backed policies will query.
pub const ISO_ORACLE_GUARD: usize = 40;

/// A single-pair oracle: given two isomorphic gadget graphs, names `x` and
/// `y` such that some isomorphism maps `x` to `y`.
pub trait IsoOracle {
    fn answer(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error>;
}

impl<F> IsoOracle for F
where
    F: FnMut(&GadgetGraph, &GadgetGraph) -> Result<(VertexId, VertexId), Error>,
{
    fn answer(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        self(g, h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoPolicyKind {
    HonestLex,
    AdversarialMinFreedom,
    SeededRandom,
    Planted,
}

/// Configuration of a built-in oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoOraclePolicy {
    pub kind: IsoPolicyKind,
    pub seed: Option<u64>,
    /// Isomorphism between the two input graphs (planted only).
    pub planted_map: Option<VertexMap>,
    pub guard: usize,
}

impl IsoOraclePolicy {
    pub fn honest() -> Self {
        Self { kind: IsoPolicyKind::HonestLex, seed: None, planted_map: None, guard: ISO_ORACLE_GUARD }
    }

    pub fn adversarial(seed: u64) -> Self {
        Self { kind: IsoPolicyKind::AdversarialMinFreedom, seed: Some(seed), ..Self::honest() }
    }

    pub fn random(seed: u64) -> Self {
        Self { kind: IsoPolicyKind::SeededRandom, seed: Some(seed), ..Self::honest() }
    }

    /// Answers from the canonical extension of `map`. With a seed the
    /// queried G-vertex is drawn at random, otherwise it is the least one.
    pub fn planted(map: VertexMap, seed: Option<u64>) -> Self {
        Self { kind: IsoPolicyKind::Planted, seed, planted_map: Some(map), guard: ISO_ORACLE_GUARD }
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self.kind {
            IsoPolicyKind::Planted if self.planted_map.is_none() => {
                Err(Error::InvalidPolicy("planted policy requires a planted map".into()))
            }
            IsoPolicyKind::SeededRandom if self.seed.is_none() => {
                Err(Error::InvalidPolicy("seeded-random policy requires a seed".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A running instance of an [`IsoOraclePolicy`].
pub struct PolicyOracle {
    policy: IsoOraclePolicy,
    rng: ChaCha8Rng,
}

impl PolicyOracle {
    /// Checks the policy; a planted map must be an isomorphism `g -> h`.
    pub fn new(policy: IsoOraclePolicy, g: &SimpleGraph, h: &SimpleGraph) -> Result<Self, Error> {
        policy.validate()?;
        if let Some(map) = &policy.planted_map {
            if !validate_isomorphism(g, h, map) {
                return Err(Error::PlantedViolation("planted map is not an isomorphism of the inputs".into()));
            }
        }
        let rng = ChaCha8Rng::seed_from_u64(policy.seed.unwrap_or(0));
        Ok(PolicyOracle { policy, rng })
    }

    pub fn policy(&self) -> &IsoOraclePolicy {
        &self.policy
    }

    fn matcher(&self, g: &GadgetGraph, h: &GadgetGraph) -> Result<Matcher, Error> {
        let size = g.vertex_count().max(h.vertex_count());
        if size > self.policy.guard {
            return Err(Error::InstanceTooLarge { size, guard: self.policy.guard });
        }
        Ok(Matcher::new(&g.to_simple(), &h.to_simple()))
    }

    /// The least pair of the lexicographically least isomorphism, which is
    /// the least G-vertex together with the least vertex it can map to.
    fn honest(&self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        let m = self.matcher(g, h)?;
        let x = g.vertices().next().ok_or(Error::NotIsomorphic)?;
        h.vertices().find(|&y| m.feasible(x, y)).map(|y| (x, y)).ok_or(Error::NotIsomorphic)
    }

    /// A pair lying in the fewest isomorphisms.
    ///
    /// The isomorphisms mapping `x` to a feasible `y` form a coset of the
    /// stabiliser of `x`, so that count is `|ISO| / (number of feasible
    /// images of x)` and is minimised by the `x` with the most images.
    /// Ties prefer answers touching a clique member, then a seeded draw.
    fn adversarial(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        let m = self.matcher(g, h)?;
        let table = m.feasible_pairs();
        if table.is_empty() || table.values().any(Vec::is_empty) {
            return Err(Error::NotIsomorphic);
        }
        let widest = table.values().map(Vec::len).max().unwrap();
        let pairs: Vec<(VertexId, VertexId)> = table
            .iter()
            .filter(|(_, ys)| ys.len() == widest)
            .flat_map(|(&x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect();
        let touches_new = |&(x, y): &(VertexId, VertexId)| !g.is_old(x) || !h.is_old(y);
        let preferred: Vec<(VertexId, VertexId)> = pairs.iter().copied().filter(touches_new).collect();
        let pool = if preferred.is_empty() { pairs } else { preferred };
        Ok(*pool.choose(&mut self.rng).unwrap())
    }

    fn random(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        let m = self.matcher(g, h)?;
        if g.vertex_count() == 0 {
            return Err(Error::NotIsomorphic);
        }
        let x = g.vertex_at(self.rng.gen_range(0..g.vertex_count())).unwrap();
        let mut ys: Vec<VertexId> = h.vertices().collect();
        ys.shuffle(&mut self.rng);
        ys.into_iter().find(|&y| m.feasible(x, y)).map(|y| (x, y)).ok_or(Error::NotIsomorphic)
    }

    fn planted(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        let map = self.policy.planted_map.as_ref().expect("validated");
        let x = match self.policy.seed {
            Some(_) if g.vertex_count() > 0 => g.vertex_at(self.rng.gen_range(0..g.vertex_count())),
            _ => g.vertices().next(),
        }
        .ok_or_else(|| Error::PlantedViolation("queried with an empty graph".into()))?;
        let y = planted_image(map, g, h, x)?;
        Ok((x, y))
    }
}

/// Image of `x` under the canonical extension of `map`: old vertices map
/// through `map`, a clique member maps to the member with the same size and
/// ordinal in the clique at the image of its anchor.
pub fn planted_image(map: &VertexMap, g: &GadgetGraph, h: &GadgetGraph, x: VertexId) -> Result<VertexId, Error> {
    let image = |v: VertexId| {
        map.get(&v)
            .copied()
            .filter(|&w| h.is_old(w))
            .ok_or_else(|| Error::PlantedViolation(format!("image of old vertex {v} is not old in H")))
    };
    match g.kind(x) {
        Some(VertexKind::Old) => image(x),
        Some(VertexKind::New { anchor, size, ordinal }) => {
            let a = image(anchor)?;
            h.member(a, size, ordinal).ok_or_else(|| {
                Error::PlantedViolation(format!("no clique member ({a}, {size}, {ordinal}) in H"))
            })
        }
        None => Err(Error::PlantedViolation(format!("{x} is not a vertex of G"))),
    }
}

impl IsoOracle for PolicyOracle {
    fn answer(&mut self, g: &GadgetGraph, h: &GadgetGraph) -> Result<(VertexId, VertexId), Error> {
        match self.policy.kind {
            IsoPolicyKind::HonestLex => self.honest(g, h),
            IsoPolicyKind::AdversarialMinFreedom => self.adversarial(g, h),
            IsoPolicyKind::SeededRandom => self.random(g, h),
            IsoPolicyKind::Planted => self.planted(g, h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_map;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn k3() -> SimpleGraph {
        SimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn honest_on_k3_answers_one_one() {
        let g = GadgetGraph::from_simple(&k3());
        let mut o = PolicyOracle::new(IsoOraclePolicy::honest(), &k3(), &k3()).unwrap();
        assert_eq!(o.answer(&g, &g).unwrap(), (v(1), v(1)));
    }

    #[test]
    fn no_policy_pairs_p3_endpoint_with_center() {
        let p = SimpleGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let g = GadgetGraph::from_simple(&p);
        for seed in 0..20 {
            for policy in [IsoOraclePolicy::honest(), IsoOraclePolicy::adversarial(seed), IsoOraclePolicy::random(seed)] {
                let (x, y) = PolicyOracle::new(policy, &p, &p).unwrap().answer(&g, &g).unwrap();
                assert_eq!(x == v(2), y == v(2), "answer ({x}, {y})");
            }
        }
    }

    #[test]
    fn planted_maps_members_by_coordinates() {
        let g0 = SimpleGraph::from_edges(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        let map = vertex_map([(1, 2), (2, 3), (3, 1), (4, 4)]);
        let h0 = g0.relabeled(&map);
        let mut g = GadgetGraph::from_simple(&g0);
        let mut h = GadgetGraph::from_simple(&h0);
        g.attach_clique(v(4), 3);
        let cg = g.attach_clique(v(4), 5);
        h.attach_clique(v(4), 3);
        h.attach_clique(v(4), 5);
        let x = cg.member(2).unwrap();
        let y = planted_image(&map, &g, &h, x).unwrap();
        assert_eq!(h.kind(y), Some(VertexKind::New { anchor: v(4), size: 5, ordinal: 2 }));
        assert_eq!(planted_image(&map, &g, &h, v(1)).unwrap(), v(2));
    }

    #[test]
    fn planted_detects_missing_clique() {
        let g0 = SimpleGraph::from_edges(2, &[(1, 2)]).unwrap();
        let map = vertex_map([(1, 1), (2, 2)]);
        let mut g = GadgetGraph::from_simple(&g0);
        let h = GadgetGraph::from_simple(&g0);
        let c = g.attach_clique(v(1), 3);
        assert!(matches!(
            planted_image(&map, &g, &h, c.first_member),
            Err(Error::PlantedViolation(_))
        ));
    }

    #[test]
    fn policy_invariants() {
        assert!(IsoOraclePolicy { seed: None, ..IsoOraclePolicy::random(1) }.validate().is_err());
        assert!(IsoOraclePolicy { planted_map: None, ..IsoOraclePolicy::planted(VertexMap::new(), None) }
            .validate()
            .is_err());
        let bad = vertex_map([(1, 2), (2, 1), (3, 3)]);
        let p = SimpleGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            PolicyOracle::new(IsoOraclePolicy::planted(bad, None), &p, &p),
            Err(Error::PlantedViolation(_))
        ));
    }

    #[test]
    fn not_isomorphic_and_guard() {
        let p = SimpleGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let (gk, gp) = (GadgetGraph::from_simple(&k3()), GadgetGraph::from_simple(&p));
        let mut o = PolicyOracle::new(IsoOraclePolicy::honest(), &k3(), &k3()).unwrap();
        assert_eq!(o.answer(&gk, &gp), Err(Error::NotIsomorphic));
        let mut small = PolicyOracle::new(IsoOraclePolicy::adversarial(0).with_guard(2), &k3(), &k3()).unwrap();
        assert_eq!(small.answer(&gk, &gk), Err(Error::InstanceTooLarge { size: 3, guard: 2 }));
    }
}
