//! JSON edge lists and solution files.
//!
//! Graphs are `{"n": 4, "edges": [[1, 2], [2, 3]]}` with 1-based vertices.
//! For multigraphs repeated pairs are parallel edges, `[u, u]` is a self-loop
//! and edge `k` of the list gets `EdgeId(k)`.

use p2c_core::{EdgeId, HamiltonianCycle, MultiGraph, SimpleGraph, VertexId, VertexMap};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::graph6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub n: u32,
    pub edges: Vec<[u32; 2]>,
}

impl EdgeList {
    fn pairs(&self) -> Vec<(u32, u32)> {
        self.edges.iter().map(|&[a, b]| (a, b)).collect()
    }
}

fn invalid(e: p2c_core::Error) -> FormatError {
    FormatError::Invalid(e.to_string())
}

pub fn simple_from_json(text: &str) -> Result<SimpleGraph, FormatError> {
    let doc: EdgeList = serde_json::from_str(text)?;
    SimpleGraph::from_edges(doc.n, &doc.pairs()).map_err(invalid)
}

/// Requires vertices `1..=n`.
pub fn simple_to_json(g: &SimpleGraph) -> String {
    let doc = EdgeList { n: g.vertex_count() as u32, edges: g.edges().map(|(a, b)| [a.0, b.0]).collect() };
    serde_json::to_string(&doc).expect("edge lists serialize")
}

pub fn multi_from_json(text: &str) -> Result<MultiGraph, FormatError> {
    let doc: EdgeList = serde_json::from_str(text)?;
    MultiGraph::from_edges(doc.n, &doc.pairs()).map_err(invalid)
}

/// Writes the input form of `g`: all vertices and every edge at its origin.
pub fn multi_to_json(g: &MultiGraph) -> String {
    let edges = (0..g.original_edge_count() as u32)
        .map(|k| {
            let (a, b) = g.origin(EdgeId(k)).expect("edge ids are dense");
            [a.0, b.0]
        })
        .collect();
    serde_json::to_string(&EdgeList { n: g.vertex_count() as u32, edges }).expect("edge lists serialize")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    Json,
}

impl GraphFormat {
    /// JSON if the text starts with `{`, graph6 otherwise.
    pub fn sniff(text: &str) -> GraphFormat {
        if text.trim_start().starts_with('{') {
            GraphFormat::Json
        } else {
            GraphFormat::Graph6
        }
    }
}

/// All simple graphs in `text`: one JSON document, or one graph6 per line.
pub fn read_simple_graphs(text: &str, format: Option<GraphFormat>) -> Result<Vec<SimpleGraph>, FormatError> {
    match format.unwrap_or_else(|| GraphFormat::sniff(text)) {
        GraphFormat::Json => Ok(vec![simple_from_json(text)?]),
        GraphFormat::Graph6 => graph6::decode_all(text),
    }
}

/// A multigraph from JSON, or a simple graph given as graph6 (its edges
/// numbered in graph6 bit order).
pub fn read_multigraph(text: &str, format: Option<GraphFormat>) -> Result<MultiGraph, FormatError> {
    match format.unwrap_or_else(|| GraphFormat::sniff(text)) {
        GraphFormat::Json => multi_from_json(text),
        GraphFormat::Graph6 => {
            let g = graph6::decode(text.lines().find(|l| !l.trim().is_empty()).unwrap_or(""))?;
            let mut edges: Vec<(u32, u32)> = g.edges().map(|(a, b)| (a.0, b.0)).collect();
            edges.sort_by_key(|&(a, b)| (b, a));
            MultiGraph::from_edges(g.vertex_count() as u32, &edges).map_err(invalid)
        }
    }
}

/// A Hamiltonian cycle as written to solution files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub cycle: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl From<&HamiltonianCycle> for CycleDoc {
    fn from(c: &HamiltonianCycle) -> Self {
        CycleDoc { cycle: c.order.clone(), edges: c.edges.clone() }
    }
}

impl From<CycleDoc> for HamiltonianCycle {
    fn from(d: CycleDoc) -> Self {
        HamiltonianCycle { order: d.cycle, edges: d.edges }
    }
}

/// Either solution kind: an isomorphism `{"1": 5, ...}` or a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Cycle(CycleDoc),
    Isomorphism(VertexMap),
}

/// A document with a `cycle` key is a cycle, anything else a map.
pub fn solution_from_json(text: &str) -> Result<Solution, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("cycle").is_some() {
        Ok(Solution::Cycle(serde_json::from_value(value)?))
    } else {
        Ok(Solution::Isomorphism(serde_json::from_str(text)?))
    }
}

pub fn isomorphism_to_json(phi: &VertexMap) -> String {
    serde_json::to_string(phi).expect("maps serialize")
}

pub fn cycle_to_json(c: &HamiltonianCycle) -> String {
    serde_json::to_string(&CycleDoc::from(c)).expect("cycles serialize")
}

/// A planted cycle: a plain vertex sequence `[1, 2, 3]`, or a cycle
/// document whose edge ids are used as given.
pub fn planted_cycle_from_json(text: &str, g: &MultiGraph) -> Result<HamiltonianCycle, FormatError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Planted {
        Order(Vec<VertexId>),
        Doc(CycleDoc),
    }
    match serde_json::from_str(text)? {
        Planted::Doc(d) => Ok(d.into()),
        Planted::Order(order) => HamiltonianCycle::through(g, &order)
            .ok_or_else(|| FormatError::Invalid("planted vertex sequence does not follow edges of the input".into())),
    }
}
