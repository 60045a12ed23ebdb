//! Generalized Baumslag-Solitar groups presented by finite connected labeled
//! graphs: parsing and validation, group-preserving graph rewriting, the
//! modular homomorphism, cyclic-radical indices, the elliptic-inverse sign
//! condition, and residual-property classification with explanation traces.
//!
//! Start from [`graph::LabeledGraph::parse`] and [`classify::classify_all`];
//! the `examples/` directory walks through every capability, and the `gbs`
//! binary exposes the same operations as subcommands.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod dot;
pub mod elliptic;
pub mod error;
pub mod fuzz;
pub mod graph;
pub mod modular;
pub mod normalize;
pub mod radical;
pub mod random;

#[cfg(test)]
pub(crate) mod testutil;

pub use classify::{classify_all, detect_shape, GroupShape, Property, Report, Verdict};
pub use error::{Error, Result};
pub use graph::{
    connected_components, cycle_basis, spanning_tree, Component, EdgeId, LabeledEdge,
    LabeledGraph, SpanningData, VertexId,
};
