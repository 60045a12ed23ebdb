//! Graphviz DOT export with optional vertex annotations.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;

use crate::graph::{LabeledGraph, VertexId};

/// Optional per-vertex annotations rendered into node labels.
#[derive(Debug, Clone, Default)]
pub struct DotAnnotations {
    pub mu_v: Option<BTreeMap<VertexId, BigInt>>,
    pub zeta: Option<BTreeMap<VertexId, i8>>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the graph as a digraph; every edge carries its two labels as
/// "label_from,label_to".
pub fn emit_dot(g: &LabeledGraph, ann: &DotAnnotations) -> String {
    let mut out = String::from("digraph gbs {\n");
    for v in g.vertices() {
        let mut parts = vec![escape(&v.0)];
        if let Some(mu_v) = &ann.mu_v {
            if let Some(m) = mu_v.get(v) {
                parts.push(format!("μ={m}"));
            }
        }
        if let Some(zeta) = &ann.zeta {
            if let Some(z) = zeta.get(v) {
                parts.push(format!("ζ={}", if *z >= 0 { "+1" } else { "-1" }));
            }
        }
        writeln!(out, "  \"{}\" [label=\"{}\"];", escape(&v.0), parts.join("\\n"))
            .expect("string write");
    }
    for e in g.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{},{}\"];",
            escape(&e.from.0),
            escape(&e.to.0),
            e.label_from,
            e.label_to
        )
        .expect("string write");
    }
    out.push_str("}\n");
    out
}
