//! Graphviz export. Boundary vertices (and tree roots and leaves) are drawn
//! as double circles; edges are labelled with their weights.

use std::fmt::Write;

use crate::graph::NetworkGraph;
use crate::pcd::{LogicalTree, TreeKind};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &NetworkGraph) -> String {
    let mut out = String::from("digraph network {\n");
    for v in g.vertices() {
        let shape = if v.boundary { "doublecircle" } else { "circle" };
        writeln!(out, "  {} [shape={shape}];", quote(v.id.as_str())).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.id(e.from).as_str()),
            quote(g.id(e.to).as_str()),
            quote(&e.weight.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Source trees point away from the root, receiver trees towards it.
pub fn tree_to_dot(t: &LogicalTree) -> String {
    let name = match t.kind {
        TreeKind::Source => "source_tree",
        TreeKind::Receiver => "receiver_tree",
    };
    let mut out = format!("digraph {name} {{\n");
    for n in &t.nodes {
        let shape = if n.boundary { "doublecircle" } else { "circle" };
        writeln!(out, "  {} [shape={shape}];", quote(n.id.as_str())).unwrap();
    }
    for (p, c, w) in t.edges() {
        let (from, to) = match t.kind {
            TreeKind::Source => (p, c),
            TreeKind::Receiver => (c, p),
        };
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(t.nodes[from].id.as_str()),
            quote(t.nodes[to].id.as_str()),
            quote(&w.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
