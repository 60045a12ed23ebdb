//! Graph rewriting that preserves the presented group: elementary collapses
//! down to reduced form, admissible sign changes, and the form in which every
//! spanning-tree label is positive.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, End, LabeledGraph, SpanningData, VertexId};

/// One collapse step: which edge was contracted, which vertex disappeared,
/// and the multiplier applied to the labels around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub edge: EdgeId,
    pub absorbed: VertexId,
    pub multiplier: BigInt,
}

pub type ReductionTrace = Vec<ReductionStep>;

/// Contracts a non-loop edge whose label at `end` is a unit. The vertex at
/// that end is deleted; every other edge end incident to it is re-attached to
/// the surviving endpoint with its label multiplied by the product of the two
/// labels of the contracted edge.
pub fn elementary_collapse(g: &LabeledGraph, e: &EdgeId, end: End) -> Result<LabeledGraph> {
    let (graph, _) = collapse_step(g, e, end)?;
    Ok(graph)
}

fn collapse_step(g: &LabeledGraph, id: &EdgeId, end: End) -> Result<(LabeledGraph, ReductionStep)> {
    let e = g
        .edge(id)
        .ok_or_else(|| Error::UnknownTarget(id.to_string()))?;
    if e.is_loop() {
        return Err(Error::IsLoop(id.to_string()));
    }
    if e.label(end).abs() != BigInt::one() {
        return Err(Error::LabelNotUnit(id.to_string()));
    }
    let absorbed = e.endpoint(end).clone();
    let survivor = e.endpoint(end.opposite()).clone();
    let multiplier = e.label(end) * e.label(end.opposite());

    let vertices = g
        .vertices()
        .iter()
        .filter(|v| **v != absorbed)
        .cloned()
        .collect();
    let mut edges = Vec::with_capacity(g.edges().len() - 1);
    for f in g.edges() {
        if f.id == *id {
            continue;
        }
        let mut f = f.clone();
        for fe in [End::Plus, End::Minus] {
            if f.endpoint(fe) == &absorbed {
                *f.label_mut(fe) *= &multiplier;
                match fe {
                    End::Plus => f.from = survivor.clone(),
                    End::Minus => f.to = survivor.clone(),
                }
            }
        }
        edges.push(f);
    }
    let step = ReductionStep {
        edge: id.clone(),
        absorbed,
        multiplier,
    };
    Ok((LabeledGraph::new(vertices, edges)?, step))
}

fn eligible_collapses(g: &LabeledGraph) -> Vec<(EdgeId, End)> {
    let mut out = Vec::new();
    for e in g.edges() {
        if e.is_loop() {
            continue;
        }
        for end in [End::Plus, End::Minus] {
            if e.label(end).abs() == BigInt::one() {
                out.push((e.id.clone(), end));
            }
        }
    }
    out
}

/// Collapses until no non-loop edge carries a unit label. Deterministic: the
/// first eligible edge in the current edge order is contracted, preferring
/// the origin end.
pub fn reduce(g: &LabeledGraph) -> (LabeledGraph, ReductionTrace) {
    let mut current = g.clone();
    let mut trace = Vec::new();
    while let Some((id, end)) = eligible_collapses(&current).into_iter().next() {
        let (next, step) = collapse_step(&current, &id, end).expect("eligible collapse");
        current = next;
        trace.push(step);
    }
    (current, trace)
}

/// Same fixpoint reached through a random order of eligible collapses.
pub fn reduce_with_random_order<R: Rng>(
    g: &LabeledGraph,
    rng: &mut R,
) -> (LabeledGraph, ReductionTrace) {
    let mut current = g.clone();
    let mut trace = Vec::new();
    loop {
        let choices = eligible_collapses(&current);
        if choices.is_empty() {
            return (current, trace);
        }
        let (id, end) = choices[rng.gen_range(0..choices.len())].clone();
        let (next, step) = collapse_step(&current, &id, end).expect("eligible collapse");
        current = next;
        trace.push(step);
    }
}

/// Re-applies a recorded trace to a graph, checking each step against the
/// recorded multiplier.
pub fn replay_trace(g: &LabeledGraph, trace: &ReductionTrace) -> Result<LabeledGraph> {
    let mut current = g.clone();
    for step in trace {
        let e = current
            .edge(&step.edge)
            .ok_or_else(|| Error::UnknownTarget(step.edge.to_string()))?;
        let end = e
            .end_at(&step.absorbed)
            .ok_or_else(|| Error::UnknownTarget(step.absorbed.to_string()))?;
        let (next, replayed) = collapse_step(&current, &step.edge, end)?;
        if replayed != *step {
            return Err(Error::MalformedInput(format!(
                "trace step for edge {} does not match the graph",
                step.edge
            )));
        }
        current = next;
    }
    Ok(current)
}

/// Target of an admissible sign change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignTarget {
    /// Flip every label at an edge end incident to the vertex (a loop at the
    /// vertex flips both of its labels).
    Vertex(VertexId),
    /// Flip both labels of the edge.
    Edge(EdgeId),
}

pub fn sign_change(g: &LabeledGraph, target: &SignTarget) -> Result<LabeledGraph> {
    let mut edges = g.edges().to_vec();
    match target {
        SignTarget::Vertex(v) => {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownTarget(v.to_string()));
            }
            for e in &mut edges {
                for end in [End::Plus, End::Minus] {
                    if e.endpoint(end) == v {
                        let l = e.label_mut(end);
                        *l = -l.clone();
                    }
                }
            }
        }
        SignTarget::Edge(id) => {
            let e = edges
                .iter_mut()
                .find(|e| &e.id == id)
                .ok_or_else(|| Error::UnknownTarget(id.to_string()))?;
            e.label_from = -e.label_from.clone();
            e.label_to = -e.label_to.clone();
        }
    }
    LabeledGraph::new(g.vertices().to_vec(), edges)
}

/// Makes every label on the tree edges positive by sign changes applied from
/// the root outward. Non-tree labels may change sign; the multiset of label
/// magnitudes is preserved.
pub fn make_t_positive(g: &LabeledGraph, t: &SpanningData) -> LabeledGraph {
    let mut current = g.clone();
    for eid in &t.tree_edges {
        let e = current.edge(eid).expect("tree edge exists");
        let child = current
            .vertices()
            .iter()
            .find(|v| t.parent_edge.get(*v) == Some(eid))
            .expect("tree edge has a child endpoint")
            .clone();
        let child_end = e.end_at(&child).expect("child is an endpoint");
        let parent_end = child_end.opposite();
        if e.label(parent_end).is_negative() {
            current = sign_change(&current, &SignTarget::Edge(eid.clone())).expect("edge exists");
        }
        let e = current.edge(eid).expect("tree edge exists");
        if e.label(child_end).is_negative() {
            current = sign_change(&current, &SignTarget::Vertex(child)).expect("vertex exists");
        }
    }
    current
}
