//! Graphviz snapshots of engine states.
//!
//! Old vertices are drawn filled, clique members hollow.

use std::fmt::Write;

use p2c_core::hc::LeftRightContext;
use p2c_core::iso::GadgetGraph;
use p2c_core::MultiGraph;

fn ids(set: &std::collections::BTreeSet<p2c_core::EdgeId>) -> String {
    set.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(",")
}

fn gadget_cluster(out: &mut String, tag: &str, g: &GadgetGraph) {
    let _ = writeln!(out, "  subgraph cluster_{tag} {{\n    label=\"{tag}\";");
    for v in g.vertices() {
        let style = if g.is_old(v) { "style=filled, fillcolor=black, fontcolor=white" } else { "style=solid" };
        let _ = writeln!(out, "    {tag}{v} [label=\"{v}\", shape=circle, {style}];");
    }
    for (a, b) in g.to_simple().edges() {
        let _ = writeln!(out, "    {tag}{a} -- {tag}{b};");
    }
    out.push_str("  }\n");
}

/// Both gadget graphs side by side.
pub fn gadget_pair(name: &str, g: &GadgetGraph, h: &GadgetGraph) -> String {
    let mut out = format!("graph {name} {{\n");
    gadget_cluster(&mut out, "G", g);
    gadget_cluster(&mut out, "H", h);
    out.push_str("}\n");
    out
}

/// The contracted multigraph with every edge labelled by id. Mapped
/// vertices show their `L`/`R` sets.
pub fn hc_state(name: &str, g: &MultiGraph, ctx: &LeftRightContext) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in g.vertices() {
        match ctx.get(v) {
            Some(s) => {
                let _ = writeln!(
                    out,
                    "  v{v} [label=\"{v}\", shape=doublecircle, xlabel=\"L{{{}}} R{{{}}}\"];",
                    ids(&s.left),
                    ids(&s.right)
                );
            }
            None => {
                let _ = writeln!(out, "  v{v} [label=\"{v}\", shape=circle];");
            }
        }
    }
    for (e, a, b) in g.edges() {
        let _ = writeln!(out, "  v{a} -- v{b} [label=\"{e}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use p2c_core::SimpleGraph;

    #[test]
    fn old_filled_new_hollow() {
        let k2 = SimpleGraph::from_edges(2, &[(1, 2)]).unwrap();
        let mut g = GadgetGraph::from_simple(&k2);
        g.attach_clique(p2c_core::VertexId(1), 3);
        let dot = gadget_pair("loop_1", &g, &GadgetGraph::from_simple(&k2));
        assert!(dot.contains("G1 [label=\"1\", shape=circle, style=filled"));
        assert!(dot.contains("G3 [label=\"3\", shape=circle, style=solid]"));
        assert!(dot.contains("G3 -- G4;"));
        assert!(dot.contains("H1 -- H2;"));
    }
}
