use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::context::{LeftRightContext, Sides, Slot};
use super::oracle::HcOracle;
use crate::error::{Error, OracleAnswer};
use crate::graph::{validate_hamiltonian_cycle, EdgeId, HamiltonianCycle, MultiGraph, VertexId};

/// The graph and context an oracle was shown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcQuery {
    /// Live edges as `(id, a, b)` with current endpoints.
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    pub ctx: LeftRightContext,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcStepRecord {
    pub step: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub query: Option<HcQuery>,
    pub answer: EdgeId,
    /// 1: neither endpoint in the context, 2: one, 3: both.
    pub case: u8,
    /// Case 2: which endpoint (`u` survives, `v` is absorbed) was mapped and
    /// which of its sides held the edge, e.g. `u-R`. Case 3: the sides
    /// holding the edge at `u` and at `v`, e.g. `L-R`.
    pub subcase: String,
    pub merged: [VertexId; 2],
    pub survivor: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcOutcome {
    pub cycle: HamiltonianCycle,
    pub trace: Vec<HcStepRecord>,
    pub oracle_calls: usize,
}

fn slot_name(s: Slot) -> &'static str {
    match s {
        Slot::L => "L",
        Slot::R => "R",
    }
}

/// Step-wise Hamiltonian cycle construction by edge contraction.
#[derive(Clone, Debug)]
pub struct HcEngine {
    original: MultiGraph,
    graph: MultiGraph,
    ctx: LeftRightContext,
    chosen: Vec<EdgeId>,
    trace: Vec<HcStepRecord>,
    oracle_calls: usize,
    record_queries: bool,
}

impl HcEngine {
    pub fn new(g: &MultiGraph) -> Self {
        HcEngine {
            original: g.clone(),
            graph: g.clone(),
            ctx: LeftRightContext::new(),
            chosen: Vec::new(),
            trace: Vec::new(),
            oracle_calls: 0,
            record_queries: true,
        }
    }

    /// Leaves `query` out of the step records.
    pub fn without_query_snapshots(mut self) -> Self {
        self.record_queries = false;
        self
    }

    pub fn original(&self) -> &MultiGraph {
        &self.original
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn context(&self) -> &LeftRightContext {
        &self.ctx
    }

    /// Contracted edges so far, in order.
    pub fn chosen(&self) -> &[EdgeId] {
        &self.chosen
    }

    pub fn trace(&self) -> &[HcStepRecord] {
        &self.trace
    }

    pub fn steps_done(&self) -> usize {
        self.chosen.len()
    }

    pub fn oracle_calls(&self) -> usize {
        self.oracle_calls
    }

    /// True once at most one vertex is left.
    pub fn is_done(&self) -> bool {
        self.graph.vertex_count() <= 1
    }

    /// Asks the oracle for one edge and contracts it.
    pub fn step<O: HcOracle + ?Sized>(&mut self, oracle: &mut O) -> Result<&HcStepRecord, Error> {
        if self.is_done() {
            return Err(Error::InternalInvariant(String::from("step called on a finished run")));
        }
        let round = self.chosen.len() + 1;
        let e = oracle.answer(&self.graph, &self.ctx)?;
        self.oracle_calls += 1;
        let answer = OracleAnswer::Edge(e);
        if !self.graph.contains_edge(e) {
            return Err(Error::violation(round, answer, "not a live edge"));
        }
        if self.graph.is_loop(e) {
            return Err(Error::violation(round, answer, "edge is a self-loop"));
        }
        self.contract_and_update(e)
    }

    /// Contracts `e` and rewrites the context around the merged vertex.
    pub fn contract_and_update(&mut self, e: EdgeId) -> Result<&HcStepRecord, Error> {
        let round = self.chosen.len() + 1;
        let answer = OracleAnswer::Edge(e);
        let (u, v) = match self.graph.endpoints(e) {
            None => return Err(Error::Contraction { edge: e, reason: "unknown or already removed edge" }),
            Some((a, b)) if a == b => return Err(Error::Contraction { edge: e, reason: "edge is a self-loop" }),
            Some(ends) => ends,
        };
        let query = self.record_queries.then(|| HcQuery { edges: self.graph.edges().collect(), ctx: self.ctx.clone() });
        let eu = self.graph.incident_set(u).cloned().unwrap_or_default();
        let ev = self.graph.incident_set(v).cloned().unwrap_or_default();
        // Former edges of one endpoint, minus everything joining it to the other.
        let away = |from: &BTreeSet<EdgeId>, other: &BTreeSet<EdgeId>| -> BTreeSet<EdgeId> {
            from.difference(other).copied().collect()
        };

        let (case, subcase, sides) = match (self.ctx.get(u).cloned(), self.ctx.get(v).cloned()) {
            (None, None) => {
                let mut left = eu.clone();
                left.remove(&e);
                (1, String::from("-"), Sides::new(left, away(&ev, &eu)))
            }
            (Some(sx), None) | (None, Some(sx)) => {
                let (x, label, w_edges, x_edges) =
                    if self.ctx.contains(u) { (u, "u", &ev, &eu) } else { (v, "v", &eu, &ev) };
                let slot = sx.slot_of(e).ok_or_else(|| {
                    Error::violation(round, answer, format!("{e} is in neither L({x}) nor R({x})"))
                })?;
                let replacement = away(w_edges, x_edges);
                let sides = match slot {
                    Slot::L => Sides::new(replacement, sx.right),
                    Slot::R => Sides::new(sx.left, replacement),
                };
                (2, format!("{label}-{}", slot_name(slot)), sides)
            }
            (Some(su), Some(sv)) => {
                let missing = |x: VertexId| Error::violation(round, answer, format!("{e} is in neither L({x}) nor R({x})"));
                let a = su.slot_of(e).ok_or_else(|| missing(u))?;
                let b = sv.slot_of(e).ok_or_else(|| missing(v))?;
                // The endpoint whose R held the edge keeps its L, the other
                // keeps its R; equal slots keep the opposite sides, lower id
                // in L.
                let mut sides = match (a, b) {
                    (Slot::L, Slot::R) => Sides::new(sv.left, su.right),
                    (Slot::R, Slot::L) => Sides::new(su.left, sv.right),
                    (Slot::L, Slot::L) => Sides::new(su.right, sv.right),
                    (Slot::R, Slot::R) => Sides::new(su.left, sv.left),
                };
                // Leftover u-v parallels can sit on both sides; they are
                // self-loops from now on and stay only in L.
                let left = sides.left.clone();
                sides.right.retain(|f| !left.contains(f));
                (3, format!("{}-{}", slot_name(a), slot_name(b)), sides)
            }
        };

        let c = self.graph.contract_edge(e)?;
        self.ctx.remove(u);
        self.ctx.remove(v);
        self.ctx.insert(c.survivor, sides);
        self.chosen.push(e);
        self.trace.push(HcStepRecord { step: round, query, answer: e, case, subcase, merged: [u, v], survivor: c.survivor });
        Ok(self.trace.last().unwrap())
    }

    /// Closes the contracted edges into a cycle of the input graph.
    ///
    /// The contracted edges form a Hamiltonian path of the input; the
    /// closing edge is the least id in `L(z) ∪ R(z)` of the last vertex `z`
    /// that joins the two ends of that path.
    pub fn finalize(&self) -> Result<HamiltonianCycle, Error> {
        let invariant = |m: String| Error::InternalInvariant(m);
        match self.original.vertex_count() {
            0 => return Ok(HamiltonianCycle::default()),
            1 => {
                let v = self.original.vertices().next().unwrap();
                return Ok(HamiltonianCycle { order: alloc::vec![v], edges: Vec::new() });
            }
            _ => {}
        }
        if self.graph.vertex_count() != 1 {
            return Err(invariant(format!("finalize with {} vertices left", self.graph.vertex_count())));
        }
        let z = self.graph.vertices().next().unwrap();
        let sides = self.ctx.get(z).ok_or_else(|| invariant(format!("last vertex {z} has no context")))?;
        let mut degree: BTreeMap<VertexId, usize> = self.original.vertices().map(|v| (v, 0)).collect();
        for &e in &self.chosen {
            let (a, b) = self.original.origin(e).expect("chosen edges come from the input");
            *degree.get_mut(&a).unwrap() += 1;
            *degree.get_mut(&b).unwrap() += 1;
        }
        let ends: Vec<VertexId> = degree.iter().filter(|&(_, &d)| d == 1).map(|(&v, _)| v).collect();
        if ends.len() != 2 || degree.values().any(|&d| d == 0 || d > 2) {
            return Err(invariant(String::from("contracted edges do not form a Hamiltonian path")));
        }
        let closing = sides
            .left
            .union(&sides.right)
            .copied()
            .find(|&f| self.original.origin(f) == Some((ends[0], ends[1])))
            .ok_or_else(|| invariant(format!("no edge of L({z}) or R({z}) joins {} and {}", ends[0], ends[1])))?;
        let edges: Vec<(EdgeId, VertexId, VertexId)> = self
            .chosen
            .iter()
            .chain([&closing])
            .map(|&f| {
                let (a, b) = self.original.origin(f).unwrap();
                (f, a, b)
            })
            .collect();
        let cycle = HamiltonianCycle::assemble(&edges)
            .filter(|c| validate_hamiltonian_cycle(&self.original, c))
            .ok_or_else(|| invariant(String::from("chosen edges do not assemble into a Hamiltonian cycle")))?;
        Ok(cycle)
    }

    pub fn into_outcome(self) -> Result<HcOutcome, Error> {
        let cycle = self.finalize()?;
        Ok(HcOutcome { cycle, trace: self.trace, oracle_calls: self.oracle_calls })
    }
}

/// Runs the whole construction: `n - 1` oracle calls, then the local final
/// pick.
pub fn complete_hamiltonian_cycle<O: HcOracle + ?Sized>(g: &MultiGraph, oracle: &mut O) -> Result<HcOutcome, Error> {
    let mut engine = HcEngine::new(g);
    while !engine.is_done() {
        engine.step(oracle)?;
    }
    engine.into_outcome()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hc::oracle::{HcOraclePolicy, HcPolicyOracle};

    fn ids(xs: &[u32]) -> BTreeSet<EdgeId> {
        xs.iter().map(|&e| EdgeId(e)).collect()
    }

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn triangle_case_one() {
        let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let mut eng = HcEngine::new(&g);
        let rec = eng.contract_and_update(EdgeId(0)).unwrap().clone();
        assert_eq!((rec.case, rec.survivor), (1, v(1)));
        assert_eq!(eng.context().get(v(1)), Some(&Sides::new(ids(&[2]), ids(&[1]))));
        assert_eq!(eng.context().len(), 1);
    }

    #[test]
    fn four_cycle_case_two_on_right() {
        let g = MultiGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let mut eng = HcEngine::new(&g);
        eng.contract_and_update(EdgeId(0)).unwrap();
        let before = eng.context().get(v(1)).unwrap().clone();
        assert!(before.right.contains(&EdgeId(1)));
        let rec = eng.contract_and_update(EdgeId(1)).unwrap().clone();
        assert_eq!((rec.case, rec.subcase.as_str()), (2, "u-R"));
        assert_eq!(eng.context().get(v(1)).unwrap().left, before.left);
    }

    #[test]
    fn case_two_rejects_foreign_edge() {
        // K4: e0 = {1,2} gives L(1) = {e1, e2}, R(1) = {e3, e4}; e3 replaces R
        // by {e5}, leaving e4 (now {1,4}) on neither side.
        let g = MultiGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let mut eng = HcEngine::new(&g);
        eng.contract_and_update(EdgeId(0)).unwrap();
        eng.contract_and_update(EdgeId(3)).unwrap();
        assert_eq!(eng.context().get(v(1)), Some(&Sides::new(ids(&[1, 2]), ids(&[5]))));
        assert!(matches!(eng.contract_and_update(EdgeId(4)), Err(Error::OracleViolation(_))));
    }

    #[test]
    fn case_three_keeps_sides_disjoint() {
        let g = MultiGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let mut eng = HcEngine::new(&g);
        eng.contract_and_update(EdgeId(0)).unwrap();
        eng.contract_and_update(EdgeId(2)).unwrap();
        let rec = eng.contract_and_update(EdgeId(1)).unwrap().clone();
        assert_eq!(rec.case, 3);
        eng.context().check_well_formed(eng.graph()).unwrap();
        let c = eng.finalize().unwrap();
        assert!(validate_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn double_edge_closes_with_parallel_copy() {
        let g = MultiGraph::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        let mut o = HcPolicyOracle::new(HcOraclePolicy::honest(), &g).unwrap();
        let out = complete_hamiltonian_cycle(&g, &mut o).unwrap();
        assert_eq!(out.oracle_calls, 1);
        assert_eq!(out.cycle.edge_set(), [EdgeId(0), EdgeId(1)]);
    }

    #[test]
    fn k4_finalize_picks_the_closing_edge() {
        let g = MultiGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let mut eng = HcEngine::new(&g);
        for e in [0, 3, 5] {
            eng.contract_and_update(EdgeId(e)).unwrap();
        }
        let c = eng.finalize().unwrap();
        assert_eq!(c.edge_set(), [0, 2, 3, 5].map(EdgeId));
    }

    #[test]
    fn tiny_inputs() {
        let one = MultiGraph::from_edges(1, &[]).unwrap();
        let out = complete_hamiltonian_cycle(&one, &mut |_: &MultiGraph, _: &LeftRightContext| -> Result<EdgeId, Error> {
            unreachable!()
        })
        .unwrap();
        assert_eq!(out.cycle.order, [v(1)]);
        assert_eq!(out.oracle_calls, 0);
        let zero = MultiGraph::from_edges(0, &[]).unwrap();
        assert!(HcEngine::new(&zero).finalize().unwrap().is_empty());
    }

    #[test]
    fn self_loop_answer_is_a_violation() {
        let g = MultiGraph::from_edges(3, &[(1, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let r = complete_hamiltonian_cycle(&g, &mut |_: &MultiGraph, _: &LeftRightContext| Ok(EdgeId(0)));
        assert!(matches!(r, Err(Error::OracleViolation(_))));
    }
}
