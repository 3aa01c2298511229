use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::context::LeftRightContext;
use super::enumerate::{enumerate_consistent_cycles, enumerate_hamiltonian_cycles, HC_ENUMERATION_GUARD};
use crate::error::Error;
use crate::graph::{validate_hamiltonian_cycle, EdgeId, HamiltonianCycle, MultiGraph};

/// An edge oracle: given a multigraph and a left-right context, names an
/// edge lying on some Hamiltonian cycle consistent with the context.
pub trait HcOracle {
    fn answer(&mut self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error>;
}

impl<F> HcOracle for F
where
    F: FnMut(&MultiGraph, &LeftRightContext) -> Result<EdgeId, Error>,
{
    fn answer(&mut self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error> {
        self(g, ctx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HcPolicyKind {
    HonestLex,
    AdversarialMinFreedom,
    SeededRandom,
    Planted,
    /// Ignores the context. Breaks the oracle contract on purpose.
    ContextFreeExperimental,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcOraclePolicy {
    pub kind: HcPolicyKind,
    pub seed: Option<u64>,
    /// Hamiltonian cycle of the input graph (planted only).
    pub planted_cycle: Option<HamiltonianCycle>,
    pub guard: usize,
}

impl HcOraclePolicy {
    pub fn honest() -> Self {
        Self { kind: HcPolicyKind::HonestLex, seed: None, planted_cycle: None, guard: HC_ENUMERATION_GUARD }
    }

    pub fn adversarial(seed: u64) -> Self {
        Self { kind: HcPolicyKind::AdversarialMinFreedom, seed: Some(seed), ..Self::honest() }
    }

    pub fn random(seed: u64) -> Self {
        Self { kind: HcPolicyKind::SeededRandom, seed: Some(seed), ..Self::honest() }
    }

    pub fn planted(cycle: HamiltonianCycle) -> Self {
        Self { kind: HcPolicyKind::Planted, planted_cycle: Some(cycle), ..Self::honest() }
    }

    pub fn context_free(seed: u64) -> Self {
        Self { kind: HcPolicyKind::ContextFreeExperimental, seed: Some(seed), ..Self::honest() }
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self.kind {
            HcPolicyKind::Planted if self.planted_cycle.is_none() => {
                Err(Error::InvalidPolicy("planted policy requires a planted cycle".into()))
            }
            HcPolicyKind::SeededRandom | HcPolicyKind::ContextFreeExperimental if self.seed.is_none() => {
                Err(Error::InvalidPolicy("seeded policy requires a seed".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A running instance of an [`HcOraclePolicy`].
pub struct HcPolicyOracle {
    policy: HcOraclePolicy,
    planted_edges: BTreeSet<EdgeId>,
    rng: ChaCha8Rng,
}

impl HcPolicyOracle {
    /// Checks the policy; a planted cycle must be a Hamiltonian cycle of `g`.
    pub fn new(policy: HcOraclePolicy, g: &MultiGraph) -> Result<Self, Error> {
        policy.validate()?;
        let mut planted_edges = BTreeSet::new();
        if let Some(c) = &policy.planted_cycle {
            if !validate_hamiltonian_cycle(g, c) {
                return Err(Error::PlantedViolation("planted cycle is not a Hamiltonian cycle of the input".into()));
            }
            planted_edges.extend(c.edges.iter().copied());
        }
        let rng = ChaCha8Rng::seed_from_u64(policy.seed.unwrap_or(0));
        Ok(HcPolicyOracle { policy, planted_edges, rng })
    }

    pub fn policy(&self) -> &HcOraclePolicy {
        &self.policy
    }

    fn consistent(&self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<Vec<HamiltonianCycle>, Error> {
        let cycles = enumerate_consistent_cycles(g, ctx, self.policy.guard)?;
        if cycles.is_empty() {
            return Err(Error::NoWitness);
        }
        Ok(cycles)
    }

    /// Least edge of the lexicographically least consistent cycle.
    fn honest(&self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error> {
        let cycles = self.consistent(g, ctx)?;
        Ok(cycles[0].edge_set()[0])
    }

    /// An edge lying on the fewest consistent cycles, ties drawn at random.
    fn adversarial(&mut self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error> {
        let cycles = self.consistent(g, ctx)?;
        let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for c in &cycles {
            for &e in &c.edges {
                *count.entry(e).or_default() += 1;
            }
        }
        let least = *count.values().min().unwrap();
        let pool: Vec<EdgeId> = count.into_iter().filter(|&(_, k)| k == least).map(|(e, _)| e).collect();
        Ok(*pool.choose(&mut self.rng).unwrap())
    }

    fn random(&mut self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error> {
        let cycles = self.consistent(g, ctx)?;
        let c = cycles.choose(&mut self.rng).unwrap();
        Ok(*c.edges.choose(&mut self.rng).unwrap())
    }

    /// Least planted edge still live in `g`. EdgeIds survive contraction, so
    /// the contracted image of the planted cycle is just its live edges.
    fn planted(&self, g: &MultiGraph) -> Result<EdgeId, Error> {
        let e = self
            .planted_edges
            .iter()
            .copied()
            .find(|&e| g.contains_edge(e))
            .ok_or_else(|| Error::PlantedViolation("no planted edge is left".into()))?;
        if g.is_loop(e) && g.vertex_count() >= 2 {
            return Err(Error::PlantedViolation(format!("planted edge {e} was contracted into a self-loop")));
        }
        Ok(e)
    }

    fn context_free(&mut self, g: &MultiGraph) -> Result<EdgeId, Error> {
        let cycles = enumerate_hamiltonian_cycles(g, self.policy.guard)?;
        let c = cycles.choose(&mut self.rng).ok_or(Error::NoWitness)?;
        Ok(*c.edges.choose(&mut self.rng).ok_or(Error::NoWitness)?)
    }
}

impl HcOracle for HcPolicyOracle {
    fn answer(&mut self, g: &MultiGraph, ctx: &LeftRightContext) -> Result<EdgeId, Error> {
        match self.policy.kind {
            HcPolicyKind::HonestLex => self.honest(g, ctx),
            HcPolicyKind::AdversarialMinFreedom => self.adversarial(g, ctx),
            HcPolicyKind::SeededRandom => self.random(g, ctx),
            HcPolicyKind::Planted => self.planted(g),
            HcPolicyKind::ContextFreeExperimental => self.context_free(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use crate::hc::context::Sides;

    fn triangle() -> MultiGraph {
        MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn honest_on_triangle_is_least_edge() {
        let mut o = HcPolicyOracle::new(HcOraclePolicy::honest(), &triangle()).unwrap();
        assert_eq!(o.answer(&triangle(), &LeftRightContext::new()), Ok(EdgeId(0)));
    }

    #[test]
    fn unsatisfiable_context_has_no_witness() {
        let mut ctx = LeftRightContext::new();
        ctx.insert(VertexId(1), Sides::new(BTreeSet::from([EdgeId(0)]), BTreeSet::new()));
        let mut o = HcPolicyOracle::new(HcOraclePolicy::adversarial(1), &triangle()).unwrap();
        assert_eq!(o.answer(&triangle(), &ctx), Err(Error::NoWitness));
    }

    #[test]
    fn planted_cycle_must_be_valid() {
        let bogus = HamiltonianCycle { order: [1, 2].map(VertexId).to_vec(), edges: [0].map(EdgeId).to_vec() };
        assert!(matches!(
            HcPolicyOracle::new(HcOraclePolicy::planted(bogus), &triangle()),
            Err(Error::PlantedViolation(_))
        ));
        assert!(HcOraclePolicy { planted_cycle: None, ..HcOraclePolicy::planted(HamiltonianCycle::default()) }
            .validate()
            .is_err());
    }
}
