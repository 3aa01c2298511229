use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::gadget::{GadgetGraph, VertexKind};
use super::oracle::IsoOracle;
use crate::error::{Error, OracleAnswer};
use crate::graph::{SimpleGraph, VertexId, VertexMap};

/// Which of the four answer shapes a loop resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// Both answered vertices are old; the pair is used as is.
    OldOld,
    /// `x` old, `y` a clique member: `y` is replaced by its anchor and both
    /// clique components are deleted.
    OldNew,
    /// `x` a clique member, `y` old: `x` is replaced by its anchor.
    NewOld,
    /// Both clique members: both are replaced by their anchors.
    NewNew,
}

/// An oracle answer mapped back onto a pair of old vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub tag: CaseTag,
    pub x: VertexId,
    pub y: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    G,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueAdded {
    pub graph: Side,
    pub anchor: VertexId,
    pub size: u32,
}

/// One completed loop of the isomorphism engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoLoopRecord {
    #[serde(rename = "loop")]
    pub loop_index: usize,
    pub i: u32,
    pub answer: (VertexId, VertexId),
    pub case: CaseTag,
    pub resolved: (VertexId, VertexId),
    pub cliques_added: Vec<CliqueAdded>,
    pub vertices_deleted: usize,
}

/// Elementary work performed on the gadget graphs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounter {
    pub vertices_created: u64,
    pub vertices_deleted: u64,
    pub edges_removed: u64,
    pub oracle_calls: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.vertices_created + self.vertices_deleted + self.edges_removed + self.oracle_calls
    }
}

/// Result of a completed run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoOutcome {
    pub phi: VertexMap,
    /// Pairs in the order they were fixed.
    pub pairs: Vec<(VertexId, VertexId)>,
    pub trace: Vec<IsoLoopRecord>,
    pub ops: OpCounter,
}

/// State of the isomorphism loop between two oracle calls.
#[derive(Clone, Debug)]
pub struct IsoEngine {
    input_g: SimpleGraph,
    input_h: SimpleGraph,
    gadget_g: GadgetGraph,
    gadget_h: GadgetGraph,
    n: usize,
    i: u32,
    pairs: Vec<(VertexId, VertexId)>,
    trace: Vec<IsoLoopRecord>,
    ops: OpCounter,
}

impl IsoEngine {
    pub fn new(g: &SimpleGraph, h: &SimpleGraph) -> Result<Self, Error> {
        if g.vertex_count() != h.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "vertex counts differ: {} vs {}",
                g.vertex_count(),
                h.vertex_count()
            )));
        }
        let n = g.vertex_count();
        Ok(IsoEngine {
            input_g: g.clone(),
            input_h: h.clone(),
            gadget_g: GadgetGraph::from_simple(g),
            gadget_h: GadgetGraph::from_simple(h),
            n,
            i: n as u32,
            pairs: Vec::with_capacity(n),
            trace: Vec::with_capacity(n),
            ops: OpCounter::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clique size used by the next loop.
    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn completed_loops(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_done(&self) -> bool {
        self.gadget_g.is_empty() && self.gadget_h.is_empty()
    }

    pub fn gadget_g(&self) -> &GadgetGraph {
        &self.gadget_g
    }

    pub fn gadget_h(&self) -> &GadgetGraph {
        &self.gadget_h
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn trace(&self) -> &[IsoLoopRecord] {
        &self.trace
    }

    pub fn ops(&self) -> OpCounter {
        self.ops
    }

    /// Maps an oracle answer onto a pair of old vertices and checks the
    /// structure that any isomorphism containing `x -> y` would force.
    ///
    /// The error is a human-readable reason; [`IsoEngine::step`] wraps it
    /// into an oracle violation.
    pub fn resolve_answer(&self, x: VertexId, y: VertexId) -> Result<Resolution, String> {
        let (g, h) = (&self.gadget_g, &self.gadget_h);
        let kx = g.kind(x).ok_or_else(|| format!("{x} is not a vertex of the G-side graph"))?;
        let ky = h.kind(y).ok_or_else(|| format!("{y} is not a vertex of the H-side graph"))?;
        let resolution = match (kx, ky) {
            (VertexKind::Old, VertexKind::Old) => Resolution { tag: CaseTag::OldOld, x, y },
            (VertexKind::Old, VertexKind::New { anchor, size, .. }) => {
                lone_clique(g, x, size).map_err(|e| format!("old {x} paired with a new vertex: {e}"))?;
                lone_clique(h, anchor, size).map_err(|e| format!("anchor {anchor} of {y}: {e}"))?;
                Resolution { tag: CaseTag::OldNew, x, y: anchor }
            }
            (VertexKind::New { anchor, size, .. }, VertexKind::Old) => {
                lone_clique(h, y, size).map_err(|e| format!("old {y} paired with a new vertex: {e}"))?;
                lone_clique(g, anchor, size).map_err(|e| format!("anchor {anchor} of {x}: {e}"))?;
                Resolution { tag: CaseTag::NewOld, x: anchor, y }
            }
            (VertexKind::New { anchor: ax, size: sx, .. }, VertexKind::New { anchor: ay, size: sy, .. }) => {
                if sx != sy {
                    return Err(format!("clique sizes differ: {sx} vs {sy}"));
                }
                Resolution { tag: CaseTag::NewNew, x: ax, y: ay }
            }
        };
        let (sg, sh) = (g.signature(resolution.x), h.signature(resolution.y));
        if sg != sh {
            return Err(format!(
                "resolved pair ({}, {}) has mismatched anchor signatures {:?} vs {:?}",
                resolution.x, resolution.y, sg, sh
            ));
        }
        Ok(resolution)
    }

    /// Adds the resolved pair to the isomorphism, deletes both old vertices
    /// with all cliques anchored at them, and gives every surviving old
    /// neighbour a fresh clique of size `i`. Increments `i`.
    pub fn reduce_pair(&mut self, resolution: Resolution) -> (Vec<CliqueAdded>, usize) {
        let mut added = Vec::new();
        let mut deleted = 0;
        for (side, v) in [(Side::G, resolution.x), (Side::H, resolution.y)] {
            let i = self.i;
            let gadget = match side {
                Side::G => &mut self.gadget_g,
                Side::H => &mut self.gadget_h,
            };
            let neighbors: Vec<VertexId> = gadget.old_neighbors(v).collect();
            let removal = gadget.remove_old(v);
            deleted += removal.vertices;
            self.ops.vertices_deleted += removal.vertices as u64;
            self.ops.edges_removed += removal.old_edges as u64;
            for anchor in neighbors {
                let c = gadget.attach_clique(anchor, i);
                self.ops.vertices_created += u64::from(c.member_count());
                added.push(CliqueAdded { graph: side, anchor, size: i });
            }
        }
        self.pairs.push((resolution.x, resolution.y));
        self.i += 1;
        (added, deleted)
    }

    /// Checks the new pair against every fixed pair on the input graphs.
    fn check_compatible(&self, x: VertexId, y: VertexId) -> Result<(), String> {
        for &(a, b) in &self.pairs {
            if self.input_g.has_edge(x, a) != self.input_h.has_edge(y, b) {
                return Err(format!("pair ({x}, {y}) is incompatible with fixed pair ({a}, {b})"));
            }
        }
        Ok(())
    }

    /// Runs one loop: query, resolve, reduce.
    pub fn step<O: IsoOracle + ?Sized>(&mut self, oracle: &mut O) -> Result<&IsoLoopRecord, Error> {
        if self.is_done() {
            return Err(Error::InternalInvariant(String::from("step called on a finished run")));
        }
        let round = self.pairs.len() + 1;
        let (x, y) = oracle.answer(&self.gadget_g, &self.gadget_h)?;
        self.ops.oracle_calls += 1;
        let answer = OracleAnswer::Pair(x, y);
        let resolution = self.resolve_answer(x, y).map_err(|r| Error::violation(round, answer, r))?;
        self.check_compatible(resolution.x, resolution.y)
            .map_err(|r| Error::violation(round, answer, r))?;
        let i = self.i;
        let (cliques_added, vertices_deleted) = self.reduce_pair(resolution);
        self.trace.push(IsoLoopRecord {
            loop_index: round,
            i,
            answer: (x, y),
            case: resolution.tag,
            resolved: (resolution.x, resolution.y),
            cliques_added,
            vertices_deleted,
        });
        Ok(self.trace.last().unwrap())
    }

    /// The completed isomorphism; fails unless both graphs are exhausted.
    pub fn finish(self) -> Result<IsoOutcome, Error> {
        if !self.is_done() || self.pairs.len() != self.n {
            return Err(Error::InternalInvariant(format!(
                "run stopped after {} of {} pairs",
                self.pairs.len(),
                self.n
            )));
        }
        let phi: VertexMap = self.pairs.iter().copied().collect();
        let images: BTreeSet<VertexId> = phi.values().copied().collect();
        if phi.len() != self.n || images.len() != self.n {
            return Err(Error::InternalInvariant(String::from("fixed pairs are not a bijection")));
        }
        Ok(IsoOutcome { phi, pairs: self.pairs, trace: self.trace, ops: self.ops })
    }
}

/// `v` must be old, without old neighbours, and anchor exactly one clique,
/// of size `size`: i.e. `v` and that clique form a whole component.
fn lone_clique(g: &GadgetGraph, v: VertexId, size: u32) -> Result<(), String> {
    if g.old_degree(v) != 0 {
        return Err(format!("{v} still has old neighbours"));
    }
    let sizes: Vec<u32> = g.cliques_at(v).map(|c| c.size).collect();
    if sizes != [size] {
        return Err(format!("{v} anchors cliques of sizes {sizes:?}, expected exactly one of size {size}"));
    }
    Ok(())
}

/// Runs the isomorphism engine to completion.
///
/// Makes exactly `n` oracle calls when the oracle honours its contract;
/// `n = 0` returns the empty map without calling the oracle.
pub fn complete_isomorphism<O: IsoOracle + ?Sized>(
    g: &SimpleGraph,
    h: &SimpleGraph,
    oracle: &mut O,
) -> Result<IsoOutcome, Error> {
    let mut engine = IsoEngine::new(g, h)?;
    while !engine.is_done() {
        engine.step(oracle)?;
    }
    engine.finish()
}
