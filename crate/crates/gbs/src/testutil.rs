//! Small constructors shared by the unit tests.

use crate::graph::{LabeledEdge, LabeledGraph, VertexId};

pub(crate) fn graph(vertices: &[&str], edges: &[(&str, &str, &str, i64, i64)]) -> LabeledGraph {
    LabeledGraph::new(
        vertices.iter().map(|v| VertexId(v.to_string())).collect(),
        edges
            .iter()
            .map(|(id, from, to, lf, lt)| LabeledEdge::new(*id, *from, *to, *lf, *lt))
            .collect(),
    )
    .unwrap()
}

/// Single-vertex graph with one loop labeled (m, n); presents BS(m, n).
pub(crate) fn bs_loop(m: i64, n: i64) -> LabeledGraph {
    graph(&["v"], &[("e", "v", "v", m, n)])
}
