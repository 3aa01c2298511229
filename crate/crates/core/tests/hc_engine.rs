use std::collections::BTreeSet;

use p2c_core::hc::{
    complete_hamiltonian_cycle, enumerate_consistent_cycles, enumerate_hamiltonian_cycles, HcEngine, HcOracle,
    HcOraclePolicy, HcPolicyKind, HcPolicyOracle, LeftRightContext, HC_ENUMERATION_GUARD,
};
use p2c_core::{validate_hamiltonian_cycle, EdgeId, Error, HamiltonianCycle, MultiGraph, VertexId};
use proptest::prelude::*;

/// A Hamiltonian multigraph: a cycle through a shuffled vertex order plus
/// extra edges (loops and parallels allowed), all in shuffled file order.
fn hamiltonian_multigraph(max_n: u32) -> impl Strategy<Value = (MultiGraph, HamiltonianCycle)> {
    (2u32..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n).collect::<Vec<u32>>()).prop_shuffle(),
            proptest::collection::vec((1..=n, 1..=n), 0..=4),
            any::<u64>(),
        )
            .prop_map(move |(order, extra, salt)| {
                let mut edges: Vec<(u32, u32)> =
                    (0..order.len()).map(|k| (order[k], order[(k + 1) % order.len()])).collect();
                if n == 2 {
                    edges.truncate(1);
                    edges.push((order[1], order[0]));
                }
                let base = edges.len();
                edges.extend(extra);
                let mut keyed: Vec<(u64, usize, (u32, u32))> = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| ((k as u64 + 1).wrapping_mul(salt | 1).rotate_left(17), k, e))
                    .collect();
                keyed.sort();
                let g = MultiGraph::from_edges(n, &keyed.iter().map(|&(_, _, e)| e).collect::<Vec<_>>()).unwrap();
                let planted: Vec<(EdgeId, VertexId, VertexId)> = keyed
                    .iter()
                    .enumerate()
                    .filter(|(_, &(_, k, _))| k < base)
                    .map(|(id, &(_, _, (a, b)))| (EdgeId(id as u32), VertexId(a), VertexId(b)))
                    .collect();
                (g, HamiltonianCycle::assemble(&planted).unwrap())
            })
    })
}

fn edge_sets(g: &MultiGraph, ctx: &LeftRightContext) -> BTreeSet<Vec<EdgeId>> {
    enumerate_consistent_cycles(g, ctx, HC_ENUMERATION_GUARD).unwrap().iter().map(HamiltonianCycle::edge_set).collect()
}

fn checked_run(g: &MultiGraph, planted: &HamiltonianCycle, policy: HcOraclePolicy) -> Result<(), TestCaseError> {
    let n = g.vertex_count();
    let planted_edges: BTreeSet<EdgeId> = planted.edges.iter().copied().collect();
    let planted_run = policy.kind == HcPolicyKind::Planted;
    let mut oracle = HcPolicyOracle::new(policy, g).unwrap();
    let mut engine = HcEngine::new(g);
    while !engine.is_done() {
        let before = edge_sets(engine.graph(), engine.context());
        prop_assert!(!before.is_empty(), "no consistent cycle before step {}", engine.steps_done() + 1);
        if planted_run {
            let live: Vec<EdgeId> =
                planted_edges.iter().copied().filter(|&e| engine.graph().contains_edge(e)).collect();
            prop_assert!(before.contains(&live), "planted image left the consistent set");
        }

        let e = oracle.answer(engine.graph(), engine.context()).unwrap();
        prop_assert!(before.iter().any(|c| c.contains(&e)), "answer {} is on no consistent cycle", e);
        let vertices = engine.graph().vertex_count();
        let mut replay = |_: &MultiGraph, _: &LeftRightContext| Ok::<EdgeId, Error>(e);
        engine.step(&mut replay).unwrap();

        prop_assert_eq!(engine.graph().vertex_count(), vertices - 1);
        prop_assert_eq!(engine.chosen().len(), n - engine.graph().vertex_count());
        engine.context().check_well_formed(engine.graph()).map_err(TestCaseError::fail)?;
        for c in edge_sets(engine.graph(), engine.context()) {
            let mut lifted = c.clone();
            lifted.push(e);
            lifted.sort();
            prop_assert!(before.contains(&lifted), "cycle {:?} does not lift through {}", c, e);
        }
    }
    let cycle = engine.finalize().unwrap();
    prop_assert!(validate_hamiltonian_cycle(g, &cycle));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn every_policy_preserves_the_invariants((g, planted) in hamiltonian_multigraph(7), seed in any::<u64>()) {
        for policy in [
            HcOraclePolicy::honest(),
            HcOraclePolicy::adversarial(seed),
            HcOraclePolicy::random(seed),
            HcOraclePolicy::planted(planted.clone()),
        ] {
            checked_run(&g, &planted, policy)?;
        }
    }

    #[test]
    fn complete_run_makes_n_minus_one_calls((g, planted) in hamiltonian_multigraph(8), seed in any::<u64>()) {
        let mut oracle = HcPolicyOracle::new(HcOraclePolicy::random(seed), &g).unwrap();
        let out = complete_hamiltonian_cycle(&g, &mut oracle).unwrap();
        prop_assert_eq!(out.oracle_calls, g.vertex_count() - 1);
        prop_assert_eq!(out.trace.len(), g.vertex_count() - 1);
        prop_assert!(validate_hamiltonian_cycle(&g, &out.cycle));
        let mut planted_oracle = HcPolicyOracle::new(HcOraclePolicy::planted(planted.clone()), &g).unwrap();
        let out = complete_hamiltonian_cycle(&g, &mut planted_oracle).unwrap();
        prop_assert!(validate_hamiltonian_cycle(&g, &out.cycle));
        // The closing edge is picked locally and may be a parallel copy.
        prop_assert!(out.trace.iter().all(|r| planted.edges.contains(&r.answer)));
    }
}

fn k4() -> MultiGraph {
    MultiGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
}

#[test]
fn triangle_gives_its_only_cycle_under_any_order() {
    let g = MultiGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
    for seed in 0..10 {
        let mut o = HcPolicyOracle::new(HcOraclePolicy::random(seed), &g).unwrap();
        let out = complete_hamiltonian_cycle(&g, &mut o).unwrap();
        assert_eq!(out.cycle.order, [1, 2, 3].map(VertexId));
    }
}

#[test]
fn k4_adversarial_lands_on_a_k4_cycle() {
    let all: Vec<Vec<EdgeId>> =
        enumerate_hamiltonian_cycles(&k4(), HC_ENUMERATION_GUARD).unwrap().iter().map(|c| c.edge_set()).collect();
    assert_eq!(all.len(), 3);
    for seed in 0..50 {
        let mut o = HcPolicyOracle::new(HcOraclePolicy::adversarial(seed), &k4()).unwrap();
        let out = complete_hamiltonian_cycle(&k4(), &mut o).unwrap();
        assert!(all.contains(&out.cycle.edge_set()));
        assert_eq!(out.oracle_calls, 3);
    }
}

#[test]
fn planted_k4_answers_follow_the_cycle_in_id_order() {
    let g = k4();
    let planted = HamiltonianCycle::through(&g, &[1, 2, 3, 4].map(VertexId)).unwrap();
    let mut o = HcPolicyOracle::new(HcOraclePolicy::planted(planted.clone()), &g).unwrap();
    let out = complete_hamiltonian_cycle(&g, &mut o).unwrap();
    let answers: Vec<EdgeId> = out.trace.iter().map(|r| r.answer).collect();
    assert_eq!(answers, planted.edge_set()[..3]);
    assert_eq!(out.cycle.edge_set(), planted.edge_set());
}

#[test]
fn context_free_oracle_is_allowed_to_fail() {
    // Outcomes are data: either a valid cycle or a reported violation.
    let g = MultiGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (2, 4), (3, 5)]).unwrap();
    for seed in 0..30 {
        let mut o = HcPolicyOracle::new(HcOraclePolicy::context_free(seed), &g).unwrap();
        match complete_hamiltonian_cycle(&g, &mut o) {
            Ok(out) => assert!(validate_hamiltonian_cycle(&g, &out.cycle)),
            Err(e) => assert!(matches!(
                e,
                Error::OracleViolation(_) | Error::InternalInvariant(_) | Error::NoWitness
            )),
        }
    }
}

#[test]
fn case_three_membership_is_checked() {
    // e0 merges 1,2 with L(1) = {e4, e6}, R(1) = {e1, e2}; e1 then replaces R(1)
    // by {e5}, dropping e2 = {1,4}; e3 gives 4 the context L = {e2, e5},
    // R = {e6}. Now e2 joins two mapped vertices but is on no side of 1.
    let g = MultiGraph::from_edges(5, &[(1, 2), (2, 3), (2, 4), (4, 5), (1, 3), (3, 4), (5, 1)]).unwrap();
    let mut engine = HcEngine::new(&g);
    for e in [0, 1, 3] {
        engine.contract_and_update(EdgeId(e)).unwrap();
    }
    let (a, b) = engine.graph().endpoints(EdgeId(2)).unwrap();
    assert_eq!((a, b), (VertexId(1), VertexId(4)));
    assert!(engine.context().get(b).unwrap().left.contains(&EdgeId(2)));
    assert_eq!(engine.context().get(a).unwrap().slot_of(EdgeId(2)), None);
    let r = engine.step(&mut |_: &MultiGraph, _: &LeftRightContext| Ok::<EdgeId, Error>(EdgeId(2)));
    match r {
        Err(Error::OracleViolation(v)) => assert_eq!(v.round, 4),
        other => panic!("expected a violation, got {other:?}"),
    }
}
