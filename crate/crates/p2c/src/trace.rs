//! Run drivers and their JSON trace documents.
//!
//! A trace carries the input, the oracle configuration, one record per
//! oracle call and the outcome. Replaying feeds the recorded answers back
//! into the engine and must reproduce the document byte for byte.

use std::collections::VecDeque;

use p2c_core::hc::{HcEngine, HcOracle, HcOraclePolicy, HcPolicyKind, HcPolicyOracle, HcStepRecord, LeftRightContext};
use p2c_core::iso::{
    CaseTag, CliqueAdded, GadgetGraph, IsoEngine, IsoOracle, IsoOraclePolicy, IsoPolicyKind, OpCounter, PolicyOracle,
};
use p2c_core::{EdgeId, Error, MultiGraph, OracleAnswer, SimpleGraph, VertexId, VertexMap};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, ErrorInfo, FormatError};
use crate::json::{CycleDoc, EdgeList};
use crate::{dot, graph6};

pub const TRACE_FORMAT: &str = "p2c-trace/1";

/// Gadget graphs above this many vertices are left out of `query`.
pub const ISO_QUERY_LIMIT: usize = 512;

/// Inputs above this many edges get no per-step `query`.
pub const HC_QUERY_LIMIT: usize = 2048;

const REPLAY_EXHAUSTED: &str = "replay ran out of recorded answers";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub policy: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub guard: usize,
}

impl From<&IsoOraclePolicy> for OracleInfo {
    fn from(p: &IsoOraclePolicy) -> Self {
        let policy = match p.kind {
            IsoPolicyKind::HonestLex => "honest",
            IsoPolicyKind::AdversarialMinFreedom => "adversarial",
            IsoPolicyKind::SeededRandom => "random",
            IsoPolicyKind::Planted => "planted",
        };
        OracleInfo { policy: policy.into(), seed: p.seed, guard: p.guard }
    }
}

impl From<&HcOraclePolicy> for OracleInfo {
    fn from(p: &HcOraclePolicy) -> Self {
        let policy = match p.kind {
            HcPolicyKind::HonestLex => "honest",
            HcPolicyKind::AdversarialMinFreedom => "adversarial",
            HcPolicyKind::SeededRandom => "random",
            HcPolicyKind::Planted => "planted",
            HcPolicyKind::ContextFreeExperimental => "context-free",
        };
        OracleInfo { policy: policy.into(), seed: p.seed, guard: p.guard }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoQuery {
    #[serde(rename = "gG")]
    pub g: String,
    #[serde(rename = "gH")]
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoTraceRecord {
    #[serde(rename = "loop")]
    pub loop_index: usize,
    pub i: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub query: Option<IsoQuery>,
    pub answer: [VertexId; 2],
    pub case: CaseTag,
    pub resolved: [VertexId; 2],
    pub cliques_added: Vec<CliqueAdded>,
    pub vertices_deleted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoInput {
    pub g: String,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoTrace {
    pub format: String,
    pub oracle: OracleInfo,
    pub input: IsoInput,
    pub loops: Vec<IsoTraceRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solution: Option<VertexMap>,
    pub ops: OpCounter,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcTrace {
    pub format: String,
    pub oracle: OracleInfo,
    pub input: EdgeList,
    pub steps: Vec<HcStepRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solution: Option<CycleDoc>,
    pub oracle_calls: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
}

/// Either kind of trace, tagged by a `problem` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum TraceDoc {
    Iso(IsoTrace),
    Hc(HcTrace),
}

impl TraceDoc {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("traces serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<TraceDoc, FormatError> {
        // Parsed by hand: serde's tagged-enum buffering cannot read the
        // integer-keyed maps inside.
        let value: serde_json::Value = serde_json::from_str(text)?;
        let doc = match value.get("problem").and_then(|p| p.as_str()) {
            Some("iso") => TraceDoc::Iso(serde_json::from_value(value)?),
            Some("hc") => TraceDoc::Hc(serde_json::from_value(value)?),
            other => return Err(FormatError::Invalid(format!("unknown trace problem {other:?}"))),
        };
        let format = match &doc {
            TraceDoc::Iso(t) => &t.format,
            TraceDoc::Hc(t) => &t.format,
        };
        if format != TRACE_FORMAT {
            return Err(FormatError::Invalid(format!("unsupported trace format {format:?}")));
        }
        Ok(doc)
    }

    pub fn error(&self) -> Option<&ErrorInfo> {
        match self {
            TraceDoc::Iso(t) => t.error.as_ref(),
            TraceDoc::Hc(t) => t.error.as_ref(),
        }
    }
}

/// A named DOT file produced during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotFile {
    pub name: String,
    pub body: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub dot: bool,
}

pub struct IsoRun {
    pub trace: IsoTrace,
    pub error: Option<Error>,
    pub dots: Vec<DotFile>,
}

pub struct HcRun {
    pub trace: HcTrace,
    pub error: Option<Error>,
    pub dots: Vec<DotFile>,
}

fn query_of(g: &GadgetGraph, h: &GadgetGraph) -> Option<IsoQuery> {
    (g.vertex_count() <= ISO_QUERY_LIMIT && h.vertex_count() <= ISO_QUERY_LIMIT)
        .then(|| IsoQuery { g: graph6::encode(&g.to_simple()), h: graph6::encode(&h.to_simple()) })
}

/// Runs the isomorphism engine against any oracle, recording everything.
pub fn drive_iso<O: IsoOracle + ?Sized>(
    g: &SimpleGraph,
    h: &SimpleGraph,
    oracle: &mut O,
    info: OracleInfo,
    opts: RunOptions,
) -> IsoRun {
    let mut trace = IsoTrace {
        format: TRACE_FORMAT.into(),
        oracle: info,
        input: IsoInput { g: graph6::encode(g), h: graph6::encode(h) },
        loops: Vec::new(),
        solution: None,
        ops: OpCounter::default(),
        error: None,
    };
    let mut dots = Vec::new();
    let mut engine = match IsoEngine::new(g, h) {
        Ok(e) => e,
        Err(e) => return finish_iso(trace, Some(e), dots),
    };
    while !engine.is_done() {
        let k = engine.completed_loops() + 1;
        let query = query_of(engine.gadget_g(), engine.gadget_h());
        if opts.dot {
            let name = format!("loop_{k:03}");
            dots.push(DotFile { body: dot::gadget_pair(&name, engine.gadget_g(), engine.gadget_h()), name });
        }
        match engine.step(oracle) {
            Ok(rec) => trace.loops.push(IsoTraceRecord {
                loop_index: rec.loop_index,
                i: rec.i,
                query,
                answer: [rec.answer.0, rec.answer.1],
                case: rec.case,
                resolved: [rec.resolved.0, rec.resolved.1],
                cliques_added: rec.cliques_added.clone(),
                vertices_deleted: rec.vertices_deleted,
            }),
            Err(e) => {
                trace.ops = engine.ops();
                return finish_iso(trace, Some(e), dots);
            }
        }
    }
    trace.ops = engine.ops();
    match engine.finish() {
        Ok(out) => {
            trace.solution = Some(out.phi);
            finish_iso(trace, None, dots)
        }
        Err(e) => finish_iso(trace, Some(e), dots),
    }
}

fn finish_iso(mut trace: IsoTrace, error: Option<Error>, dots: Vec<DotFile>) -> IsoRun {
    trace.error = error.as_ref().map(ErrorInfo::from);
    IsoRun { trace, error, dots }
}

/// Runs a built-in isomorphism policy.
pub fn run_iso(g: &SimpleGraph, h: &SimpleGraph, policy: &IsoOraclePolicy, opts: RunOptions) -> IsoRun {
    let info = OracleInfo::from(policy);
    match PolicyOracle::new(policy.clone(), g, h) {
        Ok(mut oracle) => drive_iso(g, h, &mut oracle, info, opts),
        Err(e) => {
            let mut refuse = |_: &GadgetGraph, _: &GadgetGraph| -> Result<(VertexId, VertexId), Error> { Err(e.clone()) };
            drive_iso(g, h, &mut refuse, info, opts)
        }
    }
}

/// Runs the Hamiltonian cycle engine against any oracle.
pub fn drive_hc<O: HcOracle + ?Sized>(g: &MultiGraph, oracle: &mut O, info: OracleInfo, opts: RunOptions) -> HcRun {
    let mut engine = HcEngine::new(g);
    if g.original_edge_count() > HC_QUERY_LIMIT {
        engine = engine.without_query_snapshots();
    }
    let mut dots = Vec::new();
    let mut error = None;
    while !engine.is_done() {
        if opts.dot {
            let name = format!("step_{:03}", engine.steps_done() + 1);
            dots.push(DotFile { body: dot::hc_state(&name, engine.graph(), engine.context()), name });
        }
        if let Err(e) = engine.step(oracle) {
            error = Some(e);
            break;
        }
    }
    let solution = match error {
        None => engine.finalize().map_err(|e| error = Some(e)).ok(),
        Some(_) => None,
    };
    let input = crate::json::multi_to_json(g);
    let trace = HcTrace {
        format: TRACE_FORMAT.into(),
        oracle: info,
        input: serde_json::from_str(&input).expect("own output parses"),
        steps: engine.trace().to_vec(),
        solution: solution.as_ref().map(CycleDoc::from),
        oracle_calls: engine.oracle_calls(),
        error: error.as_ref().map(ErrorInfo::from),
    };
    HcRun { trace, error, dots }
}

/// Runs a built-in Hamiltonian cycle policy.
pub fn run_hc(g: &MultiGraph, policy: &HcOraclePolicy, opts: RunOptions) -> HcRun {
    let info = OracleInfo::from(policy);
    match HcPolicyOracle::new(policy.clone(), g) {
        Ok(mut oracle) => drive_hc(g, &mut oracle, info, opts),
        Err(e) => {
            let mut refuse = |_: &MultiGraph, _: &LeftRightContext| -> Result<EdgeId, Error> { Err(e.clone()) };
            drive_hc(g, &mut refuse, info, opts)
        }
    }
}

fn is_exhausted(e: &Option<Error>) -> bool {
    matches!(e, Some(Error::InternalInvariant(m)) if m == REPLAY_EXHAUSTED)
}

fn parse_err(e: FormatError) -> CliError {
    CliError::format("trace input", e)
}

/// Re-runs an isomorphism trace from its recorded answers.
pub fn replay_iso(doc: &IsoTrace, opts: RunOptions) -> Result<IsoRun, CliError> {
    let g = graph6::decode(&doc.input.g).map_err(parse_err)?;
    let h = graph6::decode(&doc.input.h).map_err(parse_err)?;
    let mut answers: VecDeque<(VertexId, VertexId)> = doc.loops.iter().map(|r| (r.answer[0], r.answer[1])).collect();
    if let Some(OracleAnswer::Pair(x, y)) = doc.error.as_ref().and_then(|e| e.violation.as_ref()).map(|v| v.answer) {
        answers.push_back((x, y));
    }
    let mut oracle = |_: &GadgetGraph, _: &GadgetGraph| {
        answers.pop_front().ok_or_else(|| Error::InternalInvariant(REPLAY_EXHAUSTED.into()))
    };
    let mut run = drive_iso(&g, &h, &mut oracle, doc.oracle.clone(), opts);
    if is_exhausted(&run.error) && doc.error.is_some() {
        // The recorded run stopped inside the oracle; keep its error.
        run.trace.error = doc.error.clone();
        run.error = None;
    }
    Ok(run)
}

/// Re-runs a Hamiltonian cycle trace from its recorded answers.
pub fn replay_hc(doc: &HcTrace, opts: RunOptions) -> Result<HcRun, CliError> {
    let pairs: Vec<(u32, u32)> = doc.input.edges.iter().map(|&[a, b]| (a, b)).collect();
    let g = MultiGraph::from_edges(doc.input.n, &pairs)
        .map_err(|e| parse_err(FormatError::Invalid(e.to_string())))?;
    let mut answers: VecDeque<EdgeId> = doc.steps.iter().map(|r| r.answer).collect();
    if let Some(OracleAnswer::Edge(e)) = doc.error.as_ref().and_then(|e| e.violation.as_ref()).map(|v| v.answer) {
        answers.push_back(e);
    }
    let mut oracle = |_: &MultiGraph, _: &LeftRightContext| {
        answers.pop_front().ok_or_else(|| Error::InternalInvariant(REPLAY_EXHAUSTED.into()))
    };
    let mut run = drive_hc(&g, &mut oracle, doc.oracle.clone(), opts);
    if is_exhausted(&run.error) && doc.error.is_some() {
        run.trace.error = doc.error.clone();
        run.error = None;
    }
    Ok(run)
}

/// Outcome of a successful byte-identical replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub problem: &'static str,
    pub records: usize,
    pub identical: bool,
}

/// Replays the trace in `text` and compares the regenerated document with
/// it byte for byte.
///
/// A replay that hits an oracle violation, guard or invariant failure the
/// recording did not have reports that error; any other difference is a
/// mismatch.
pub fn replay_text(text: &str, opts: RunOptions) -> Result<(ReplayReport, Vec<DotFile>), CliError> {
    let doc = TraceDoc::from_json(text).map_err(parse_err)?;
    let (regenerated, error, dots, report) = match &doc {
        TraceDoc::Iso(t) => {
            let run = replay_iso(t, opts)?;
            let report = ReplayReport { problem: "iso", records: run.trace.loops.len(), identical: true };
            (TraceDoc::Iso(run.trace), run.error, run.dots, report)
        }
        TraceDoc::Hc(t) => {
            let run = replay_hc(t, opts)?;
            let report = ReplayReport { problem: "hc", records: run.trace.steps.len(), identical: true };
            (TraceDoc::Hc(run.trace), run.error, run.dots, report)
        }
    };
    let out = regenerated.to_json();
    if out == text {
        return Ok((report, dots));
    }
    if let Some(e) = error {
        if regenerated.error() != doc.error() && (3..=5).contains(&crate::error::core_exit_code(&e)) {
            return Err(CliError::Core(e));
        }
    }
    let line = out.lines().zip(text.lines()).position(|(a, b)| a != b).unwrap_or(out.lines().count().min(text.lines().count()));
    Err(CliError::ReplayMismatch(format!("first difference at line {}", line + 1)))
}
