//! The labeled-graph data model: validation, JSON (de)serialization, spanning
//! trees with exact rational scale potentials, fundamental cycles, and
//! connected components.
//!
//! A graph is stored directed because the two labels of an edge are
//! orientation-sensitive: `label_from` sits at the origin end `e(1)` and
//! `label_to` at the terminus end `e(-1)`. Loops and parallel edges are
//! allowed everywhere.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

/// One of the two ends of an edge: `Plus` is the origin `e(1)`, `Minus` the
/// terminus `e(-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Plus,
    Minus,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::Plus => End::Minus,
            End::Minus => End::Plus,
        }
    }
}

/// An edge with its two non-zero integer labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledEdge {
    pub id: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    pub label_from: BigInt,
    pub label_to: BigInt,
}

impl LabeledEdge {
    pub fn new(
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        label_from: impl Into<BigInt>,
        label_to: impl Into<BigInt>,
    ) -> Self {
        LabeledEdge {
            id: EdgeId(id.into()),
            from: VertexId(from.into()),
            to: VertexId(to.into()),
            label_from: label_from.into(),
            label_to: label_to.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    pub fn endpoint(&self, end: End) -> &VertexId {
        match end {
            End::Plus => &self.from,
            End::Minus => &self.to,
        }
    }

    pub fn label(&self, end: End) -> &BigInt {
        match end {
            End::Plus => &self.label_from,
            End::Minus => &self.label_to,
        }
    }

    pub fn label_mut(&mut self, end: End) -> &mut BigInt {
        match end {
            End::Plus => &mut self.label_from,
            End::Minus => &mut self.label_to,
        }
    }

    /// The end at which `v` sits, preferring the origin; `None` if `v` is not
    /// an endpoint.
    pub fn end_at(&self, v: &VertexId) -> Option<End> {
        if &self.from == v {
            Some(End::Plus)
        } else if &self.to == v {
            Some(End::Minus)
        } else {
            None
        }
    }

    pub fn other_endpoint(&self, v: &VertexId) -> Option<&VertexId> {
        let end = self.end_at(v)?;
        Some(self.endpoint(end.opposite()))
    }
}

/// A finite connected multigraph with non-zero integer labels at both ends of
/// every edge. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<VertexId>,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    /// Validates and builds a graph: non-empty, unique identifiers, existing
    /// endpoints, non-zero labels, connected.
    pub fn new(vertices: Vec<VertexId>, edges: Vec<LabeledEdge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateId(v.to_string()));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for e in &edges {
            if !edge_ids.insert(e.id.clone()) {
                return Err(Error::DuplicateId(e.id.to_string()));
            }
            for end in [End::Plus, End::Minus] {
                if !seen.contains(e.endpoint(end)) {
                    return Err(Error::MalformedInput(format!(
                        "edge {} references unknown vertex {}",
                        e.id,
                        e.endpoint(end)
                    )));
                }
                if e.label(end).is_zero() {
                    return Err(Error::ZeroLabel(e.id.to_string()));
                }
            }
        }
        let graph = LabeledGraph { vertices, edges };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&LabeledEdge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    /// Lexicographically least vertex; the deterministic traversal root.
    pub fn least_vertex(&self) -> &VertexId {
        self.vertices.iter().min().expect("graph is non-empty")
    }

    /// Incident edge ends per vertex, in input edge order. A loop contributes
    /// both of its ends.
    pub fn adjacency(&self) -> BTreeMap<&VertexId, Vec<(usize, End)>> {
        let mut adj: BTreeMap<&VertexId, Vec<(usize, End)>> = BTreeMap::new();
        for v in &self.vertices {
            adj.entry(v).or_default();
        }
        for (i, e) in self.edges.iter().enumerate() {
            adj.get_mut(&e.from).expect("validated").push((i, End::Plus));
            adj.get_mut(&e.to).expect("validated").push((i, End::Minus));
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut visited = BTreeSet::new();
        let start = &self.vertices[0];
        let mut queue = VecDeque::from([start]);
        visited.insert(start);
        while let Some(v) = queue.pop_front() {
            for &(i, end) in &adj[v] {
                let w = self.edges[i].endpoint(end.opposite());
                if visited.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        visited.len() == self.vertices.len()
    }

    /// A graph is reduced when no non-loop edge carries a unit label.
    pub fn is_reduced(&self) -> bool {
        self.edges.iter().all(|e| {
            e.is_loop()
                || (e.label_from.abs() != BigInt::one() && e.label_to.abs() != BigInt::one())
        })
    }

    /// Parses the JSON graph format. Labels of any size are accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text)
            .map_err(|e| Error::MalformedInput(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RawGraph::from(self)).expect("graph serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawGraph::from(self)).expect("graph serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    id: String,
    from: String,
    to: String,
    label_from: serde_json::Number,
    label_to: serde_json::Number,
}

fn number_to_bigint(n: &serde_json::Number, edge: &str) -> Result<BigInt> {
    BigInt::from_str(&n.to_string()).map_err(|_| {
        Error::MalformedInput(format!("edge {edge}: label {n} is not an integer"))
    })
}

pub(crate) fn bigint_to_number(n: &BigInt) -> serde_json::Number {
    serde_json::Number::from_string_unchecked(n.to_string())
}

impl TryFrom<RawGraph> for LabeledGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let vertices = raw.vertices.into_iter().map(VertexId).collect();
        let edges = raw
            .edges
            .into_iter()
            .map(|e| {
                Ok(LabeledEdge {
                    label_from: number_to_bigint(&e.label_from, &e.id)?,
                    label_to: number_to_bigint(&e.label_to, &e.id)?,
                    id: EdgeId(e.id),
                    from: VertexId(e.from),
                    to: VertexId(e.to),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::new(vertices, edges)
    }
}

impl From<&LabeledGraph> for RawGraph {
    fn from(g: &LabeledGraph) -> Self {
        RawGraph {
            vertices: g.vertices.iter().map(|v| v.0.clone()).collect(),
            edges: g
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.0.clone(),
                    from: e.from.0.clone(),
                    to: e.to.0.clone(),
                    label_from: bigint_to_number(&e.label_from),
                    label_to: bigint_to_number(&e.label_to),
                })
                .collect(),
        }
    }
}

/// A maximal subtree with per-vertex exact rational scale potentials.
///
/// `scale` propagates magnitudes: s(root) = 1 and
/// s(e(-1)) = s(e(1)) * |label_from| / |label_to| along tree edges.
/// `signed_scale` propagates the signed ratio instead.
#[derive(Debug, Clone)]
pub struct SpanningData {
    pub root: VertexId,
    /// Tree edges in BFS discovery order (parent edges precede child edges).
    pub tree_edges: Vec<EdgeId>,
    /// For each non-root vertex, the tree edge joining it to its parent.
    pub parent_edge: BTreeMap<VertexId, EdgeId>,
    pub scale: BTreeMap<VertexId, BigRational>,
    pub signed_scale: BTreeMap<VertexId, BigRational>,
}

impl SpanningData {
    pub fn is_tree_edge(&self, id: &EdgeId) -> bool {
        self.tree_edges.contains(id)
    }
}

/// Deterministic maximal subtree: breadth-first from the lexicographically
/// least vertex, edges taken in input order. Loops are never tree edges.
pub fn spanning_tree(g: &LabeledGraph) -> SpanningData {
    spanning_tree_from(g, g.least_vertex().clone())
}

/// Same construction rooted at a caller-chosen vertex.
pub fn spanning_tree_from(g: &LabeledGraph, root: VertexId) -> SpanningData {
    assert!(g.contains_vertex(&root), "root must belong to the graph");
    let adj = g.adjacency();
    let one = BigRational::one();
    let mut data = SpanningData {
        root: root.clone(),
        tree_edges: Vec::new(),
        parent_edge: BTreeMap::new(),
        scale: BTreeMap::from([(root.clone(), one.clone())]),
        signed_scale: BTreeMap::from([(root.clone(), one)]),
    };
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(i, end) in &adj[&v] {
            let e = &g.edges()[i];
            let w = e.endpoint(end.opposite());
            if data.scale.contains_key(w) {
                continue;
            }
            let near = e.label(end);
            let far = e.label(end.opposite());
            let ratio = BigRational::new(near.clone(), far.clone());
            let s = &data.scale[&v] * ratio.abs();
            let r = &data.signed_scale[&v] * ratio;
            data.scale.insert(w.clone(), s);
            data.signed_scale.insert(w.clone(), r);
            data.parent_edge.insert(w.clone(), e.id.clone());
            data.tree_edges.push(e.id.clone());
            queue.push_back(w.clone());
        }
    }
    debug_assert_eq!(data.scale.len(), g.vertices().len(), "graph is connected");
    data
}

/// Recomputes potentials for the same tree from a different root. The tree
/// edges are kept; only the scales and parent orientation change.
pub fn reroot(g: &LabeledGraph, t: &SpanningData, new_root: VertexId) -> SpanningData {
    assert!(g.contains_vertex(&new_root), "root must belong to the graph");
    let tree_set: BTreeSet<&EdgeId> = t.tree_edges.iter().collect();
    let adj = g.adjacency();
    let one = BigRational::one();
    let mut data = SpanningData {
        root: new_root.clone(),
        tree_edges: Vec::new(),
        parent_edge: BTreeMap::new(),
        scale: BTreeMap::from([(new_root.clone(), one.clone())]),
        signed_scale: BTreeMap::from([(new_root.clone(), one)]),
    };
    let mut queue = VecDeque::from([new_root]);
    while let Some(v) = queue.pop_front() {
        for &(i, end) in &adj[&v] {
            let e = &g.edges()[i];
            if !tree_set.contains(&e.id) {
                continue;
            }
            let w = e.endpoint(end.opposite());
            if data.scale.contains_key(w) {
                continue;
            }
            let ratio = BigRational::new(e.label(end).clone(), e.label(end.opposite()).clone());
            data.scale.insert(w.clone(), &data.scale[&v] * ratio.abs());
            data.signed_scale
                .insert(w.clone(), &data.signed_scale[&v] * ratio);
            data.parent_edge.insert(w.clone(), e.id.clone());
            data.tree_edges.push(e.id.clone());
            queue.push_back(w.clone());
        }
    }
    data
}

/// Edge sequence of the tree path joining two vertices.
fn tree_path(g: &LabeledGraph, t: &SpanningData, a: &VertexId, b: &VertexId) -> Vec<EdgeId> {
    let chain = |mut v: VertexId| -> Vec<(VertexId, EdgeId)> {
        let mut out = Vec::new();
        while let Some(eid) = t.parent_edge.get(&v) {
            let e = g.edge(eid).expect("tree edge exists");
            let parent = e.other_endpoint(&v).expect("endpoint").clone();
            out.push((v, eid.clone()));
            v = parent;
        }
        out
    };
    let up_a = chain(a.clone());
    let up_b = chain(b.clone());
    let on_a: BTreeMap<&VertexId, usize> =
        up_a.iter().enumerate().map(|(i, (v, _))| (v, i)).collect();
    // walk b's chain until it meets a's chain (or the root)
    let mut b_part = Vec::new();
    let mut meet: Option<usize> = None;
    for (v, eid) in &up_b {
        if let Some(&i) = on_a.get(v) {
            meet = Some(i);
            break;
        }
        b_part.push(eid.clone());
    }
    let a_prefix = match meet {
        Some(i) => &up_a[..i],
        None => &up_a[..],
    };
    let mut path: Vec<EdgeId> = a_prefix.iter().map(|(_, e)| e.clone()).collect();
    b_part.reverse();
    path.extend(b_part);
    path
}

/// One fundamental cycle per non-tree edge: the edge itself followed by the
/// tree path joining its endpoints. The basis has |E| - |V| + 1 members.
pub fn cycle_basis(g: &LabeledGraph, t: &SpanningData) -> Vec<Vec<EdgeId>> {
    let mut basis = Vec::new();
    for e in g.edges() {
        if t.is_tree_edge(&e.id) {
            continue;
        }
        let mut cycle = vec![e.id.clone()];
        cycle.extend(tree_path(g, t, &e.to, &e.from));
        basis.push(cycle);
    }
    basis
}

/// A connected piece of a vertex/edge subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Connected components of an arbitrary vertex set with an arbitrary edge
/// subset over it. Components appear in first-vertex order; memberships keep
/// the input orders.
pub fn connected_components(vertices: &[VertexId], edges: &[&LabeledEdge]) -> Vec<Component> {
    let mut assigned: BTreeSet<VertexId> = BTreeSet::new();
    let mut components: Vec<Component> = Vec::new();
    for v in vertices {
        if assigned.contains(v) {
            continue;
        }
        let mut members = BTreeSet::from([v.clone()]);
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(u) = queue.pop_front() {
            for e in edges {
                // an edge may touch u at either end; follow both directions
                for end in [End::Plus, End::Minus] {
                    if e.endpoint(end) == &u {
                        let w = e.endpoint(end.opposite());
                        if members.insert(w.clone()) {
                            queue.push_back(w.clone());
                        }
                    }
                }
            }
        }
        assigned.extend(members.iter().cloned());
        let ordered: Vec<VertexId> = vertices
            .iter()
            .filter(|u| members.contains(u))
            .cloned()
            .collect();
        let comp_edges: Vec<EdgeId> = edges
            .iter()
            .filter(|e| members.contains(&e.from))
            .map(|e| e.id.clone())
            .collect();
        components.push(Component {
            vertices: ordered,
            edges: comp_edges,
        });
    }
    components
}
