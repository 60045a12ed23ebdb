//! The sign-labeling machinery deciding whether every elliptic element that
//! is conjugate to its inverse lies in the cyclic radical: the edge sign
//! function, the subgraph of edges whose subgroups strictly contain the
//! radical, the vertex-labeling algorithm, and an independent cycle-basis
//! oracle for the same condition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Signed;
use rand::Rng;

use crate::arith::prime_support;
use crate::error::{Error, Result};
use crate::graph::{
    connected_components, spanning_tree, Component, EdgeId, End, LabeledEdge, LabeledGraph,
    VertexId,
};
use crate::modular::{modular_image, ImageClass};
use crate::radical::RadicalData;

/// Sign of the product of the two labels of an edge.
pub fn xi(e: &LabeledEdge) -> i8 {
    if ( &e.label_from * &e.label_to ).is_positive() {
        1
    } else {
        -1
    }
}

/// Product of edge signs along a path; 1 on the empty path. The sequence
/// must be walkable: consecutive edges have to share an endpoint
/// consistently.
pub fn xi_path(g: &LabeledGraph, path: &[EdgeId]) -> Result<i8> {
    let mut positions: Option<BTreeSet<&VertexId>> = None;
    let mut sign = 1i8;
    for id in path {
        let e = g
            .edge(id)
            .ok_or_else(|| Error::UnknownTarget(id.to_string()))?;
        positions = Some(match positions {
            None => BTreeSet::from([&e.from, &e.to]),
            Some(reachable) => {
                let mut next = BTreeSet::new();
                for end in [End::Plus, End::Minus] {
                    if reachable.contains(e.endpoint(end)) {
                        next.insert(e.endpoint(end.opposite()));
                    }
                }
                if next.is_empty() {
                    return Err(Error::NotAPath(format!(
                        "edge {id} does not continue the walk"
                    )));
                }
                next
            }
        });
        sign *= xi(e);
    }
    Ok(sign)
}

/// The subgraph keeping every vertex and exactly the edges with k_e > 1.
pub fn gamma_prime(g: &LabeledGraph, rad: &RadicalData) -> (Vec<VertexId>, Vec<EdgeId>) {
    let edges = g
        .edges()
        .iter()
        .filter(|e| rad.k_e[&e.id] > num_bigint::BigInt::from(1))
        .map(|e| e.id.clone())
        .collect();
    (g.vertices().to_vec(), edges)
}

/// Why a component could not be labeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureCause {
    /// A loop of negative sign at the vertex.
    NegativeLoop(EdgeId),
    /// Two labeled neighbors impose contradictory signs.
    Conflict(EdgeId, EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingFailure {
    pub vertex: VertexId,
    pub cause: FailureCause,
}

/// Outcome of the labeling pass over one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaLabeling {
    pub zeta: BTreeMap<VertexId, i8>,
    pub complete: bool,
    pub failure: Option<LabelingFailure>,
}

/// Labels the component deterministically: always the least admissible
/// vertex next, so the first labeled vertex is the least of the component.
pub fn run_labeling(g: &LabeledGraph, comp: &Component) -> ZetaLabeling {
    label_component(g, comp, &mut |_| 0)
}

/// Same algorithm with the vertex picked at random from the admissible
/// candidates at every step; the completeness outcome does not depend on the
/// choices.
pub fn run_labeling_with_order<R: Rng>(
    g: &LabeledGraph,
    comp: &Component,
    rng: &mut R,
) -> ZetaLabeling {
    label_component(g, comp, &mut |candidates| rng.gen_range(0..candidates.len()))
}

fn label_component(
    g: &LabeledGraph,
    comp: &Component,
    choose: &mut dyn FnMut(&[VertexId]) -> usize,
) -> ZetaLabeling {
    let edges: Vec<&LabeledEdge> = comp
        .edges
        .iter()
        .map(|id| g.edge(id).expect("component edge exists"))
        .collect();
    let mut zeta: BTreeMap<VertexId, i8> = BTreeMap::new();

    loop {
        if zeta.len() == comp.vertices.len() {
            return ZetaLabeling {
                zeta,
                complete: true,
                failure: None,
            };
        }
        let candidates: Vec<VertexId> = if zeta.is_empty() {
            let mut sorted = comp.vertices.to_vec();
            sorted.sort();
            sorted
        } else {
            let mut out = Vec::new();
            for v in &comp.vertices {
                if zeta.contains_key(v) {
                    continue;
                }
                let adjacent_labeled = edges.iter().any(|e| {
                    !e.is_loop()
                        && ((e.from == *v && zeta.contains_key(&e.to))
                            || (e.to == *v && zeta.contains_key(&e.from)))
                });
                if adjacent_labeled {
                    out.push(v.clone());
                }
            }
            out.sort();
            out
        };
        debug_assert!(!candidates.is_empty(), "component is connected");
        let v = candidates[choose(&candidates)].clone();

        // a negative loop at v blocks the labeling
        for e in &edges {
            if e.is_loop() && e.from == v && xi(e) == -1 {
                return ZetaLabeling {
                    zeta,
                    complete: false,
                    failure: Some(LabelingFailure {
                        vertex: v,
                        cause: FailureCause::NegativeLoop(e.id.clone()),
                    }),
                };
            }
        }

        // edges joining v to already-labeled vertices
        let incident: Vec<&&LabeledEdge> = edges
            .iter()
            .filter(|e| {
                !e.is_loop()
                    && ((e.from == v && zeta.contains_key(&e.to))
                        || (e.to == v && zeta.contains_key(&e.from)))
            })
            .collect();
        let mut implied: Option<(i8, &EdgeId)> = None;
        for e in &incident {
            let other = if e.from == v { &e.to } else { &e.from };
            let value = xi(e) * zeta[other];
            match implied {
                None => implied = Some((value, &e.id)),
                Some((first, first_edge)) => {
                    if value != first {
                        return ZetaLabeling {
                            zeta,
                            complete: false,
                            failure: Some(LabelingFailure {
                                vertex: v,
                                cause: FailureCause::Conflict(
                                    first_edge.clone(),
                                    e.id.clone(),
                                ),
                            }),
                        };
                    }
                }
            }
        }
        zeta.insert(v, implied.map_or(1, |(value, _)| value));
    }
}

/// Per-component results of the labeling over the k_e > 1 subgraph.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub e_prime: Vec<EdgeId>,
    pub components: Vec<(Component, ZetaLabeling)>,
    pub holds: bool,
}

impl ConditionReport {
    /// Total sign map when every component labeled completely.
    pub fn total_zeta(&self) -> Option<BTreeMap<VertexId, i8>> {
        if !self.holds {
            return None;
        }
        let mut out = BTreeMap::new();
        for (_, labeling) in &self.components {
            out.extend(labeling.zeta.clone());
        }
        Some(out)
    }
}

/// Runs the labeling over every component of the k_e > 1 subgraph. Requires
/// a reduced graph, modular image exactly {1,-1}, and all labels powers of a
/// single odd prime.
pub fn check_condition(g: &LabeledGraph, rad: &RadicalData) -> Result<ConditionReport> {
    if !g.is_reduced() {
        return Err(Error::PreconditionViolated("graph must be reduced".into()));
    }
    let t = spanning_tree(g);
    let image = modular_image(g, &t).map_err(|e| match e {
        Error::NotDefined => Error::PreconditionViolated("group is elementary".into()),
        other => other,
    })?;
    if image.class != ImageClass::PlusMinusOne {
        return Err(Error::PreconditionViolated(
            "modular image must be exactly {1,-1}".into(),
        ));
    }
    let mut support = BTreeSet::new();
    for e in g.edges() {
        for end in [End::Plus, End::Minus] {
            support.extend(prime_support(e.label(end)).expect("labels are non-zero"));
        }
    }
    if support.len() > 1 || support.contains(&num_bigint::BigInt::from(2)) {
        return Err(Error::PreconditionViolated(
            "labels must be powers of a single odd prime".into(),
        ));
    }
    Ok(condition_report(g, rad))
}

/// The labeling pass itself, without the precondition checks; used by the
/// fuzz harness to compare against the cycle oracle on arbitrary graphs.
pub fn condition_report(g: &LabeledGraph, rad: &RadicalData) -> ConditionReport {
    let (vertices, e_prime) = gamma_prime(g, rad);
    let edge_refs: Vec<&LabeledEdge> = e_prime
        .iter()
        .map(|id| g.edge(id).expect("edge exists"))
        .collect();
    let components = connected_components(&vertices, &edge_refs);
    let labeled: Vec<(Component, ZetaLabeling)> = components
        .into_iter()
        .map(|c| {
            let z = run_labeling(g, &c);
            (c, z)
        })
        .collect();
    let holds = labeled.iter().all(|(_, z)| z.complete);
    ConditionReport {
        e_prime,
        components: labeled,
        holds,
    }
}

/// Independent oracle: the labeling succeeds on a subgraph exactly when
/// every fundamental cycle has positive sign. Computed straight from the
/// cycles: for every non-tree edge of every component, multiply the signs
/// along the edge and the tree path joining its endpoints.
pub fn oracle_cycle_check(g: &LabeledGraph, vertices: &[VertexId], edge_ids: &[EdgeId]) -> bool {
    let edges: Vec<&LabeledEdge> = edge_ids
        .iter()
        .map(|id| g.edge(id).expect("edge exists"))
        .collect();
    for comp in connected_components(vertices, &edges) {
        let comp_edges: Vec<&LabeledEdge> = comp
            .edges
            .iter()
            .map(|id| g.edge(id).expect("edge exists"))
            .collect();
        // BFS tree of the component: child -> (tree edge index, parent)
        let mut parent: BTreeMap<VertexId, (usize, VertexId)> = BTreeMap::new();
        let mut tree: BTreeSet<EdgeId> = BTreeSet::new();
        let root = comp.vertices.iter().min().expect("non-empty component");
        let mut visited = BTreeSet::from([root.clone()]);
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in comp_edges.iter().enumerate() {
                for end in [End::Plus, End::Minus] {
                    if e.endpoint(end) == &v {
                        let w = e.endpoint(end.opposite());
                        if visited.insert(w.clone()) {
                            parent.insert(w.clone(), (i, v.clone()));
                            tree.insert(e.id.clone());
                            queue.push_back(w.clone());
                        }
                    }
                }
            }
        }
        let path_to_root = |start: &VertexId| -> Vec<usize> {
            let mut out = Vec::new();
            let mut v = start.clone();
            while let Some((i, p)) = parent.get(&v) {
                out.push(*i);
                v = p.clone();
            }
            out
        };
        for e in &comp_edges {
            if tree.contains(&e.id) {
                continue;
            }
            let mut up_from = path_to_root(&e.from);
            let mut up_to = path_to_root(&e.to);
            // drop the common tail toward the root
            while let (Some(a), Some(b)) = (up_from.last(), up_to.last()) {
                if a == b {
                    up_from.pop();
                    up_to.pop();
                } else {
                    break;
                }
            }
            let mut sign = xi(e);
            for &i in up_from.iter().chain(up_to.iter()) {
                sign *= xi(comp_edges[i]);
            }
            if sign != 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::compute_radical;
    use crate::testutil::graph;

    fn e(s: &str) -> EdgeId {
        EdgeId(s.into())
    }

    fn v(s: &str) -> VertexId {
        VertexId(s.into())
    }

    #[test]
    fn xi_examples() {
        let g = graph(
            &["v1", "v2"],
            &[
                ("a", "v1", "v2", 2, 3),
                ("b", "v1", "v2", 3, -3),
                ("c", "v1", "v2", -2, -5),
            ],
        );
        assert_eq!(xi(g.edge(&e("a")).unwrap()), 1);
        assert_eq!(xi(g.edge(&e("b")).unwrap()), -1);
        assert_eq!(xi(g.edge(&e("c")).unwrap()), 1);
    }

    #[test]
    fn xi_path_examples() {
        let g = graph(
            &["v1", "v2", "v3"],
            &[("a", "v1", "v2", 2, 3), ("b", "v2", "v3", -2, 5)],
        );
        assert_eq!(xi_path(&g, &[]).unwrap(), 1);
        assert_eq!(xi_path(&g, &[e("a")]).unwrap(), 1);
        assert_eq!(xi_path(&g, &[e("a"), e("b")]).unwrap(), -1);

        let h = graph(
            &["v1", "v2", "v3", "v4"],
            &[
                ("a", "v1", "v2", 2, 3),
                ("b", "v3", "v4", 3, -3),
                ("c", "v2", "v3", 5, 7),
            ],
        );
        assert!(matches!(
            xi_path(&h, &[e("a"), e("b")]),
            Err(Error::NotAPath(_))
        ));
    }

    #[test]
    fn gamma_prime_examples() {
        let g = graph(&["v"], &[("l1", "v", "v", 9, 9), ("l2", "v", "v", 3, -3)]);
        let rad = compute_radical(&g).unwrap();
        let (vs, es) = gamma_prime(&g, &rad);
        assert_eq!(vs, vec![v("v")]);
        assert_eq!(es, vec![e("l2")]);

        let g = crate::testutil::bs_loop(2, -2);
        let rad = compute_radical(&g).unwrap();
        assert!(gamma_prime(&g, &rad).1.is_empty());

        let g = graph(&["v1", "v2"], &[("e", "v1", "v2", 3, 3)]);
        let rad = compute_radical(&g).unwrap();
        assert!(gamma_prime(&g, &rad).1.is_empty());
    }

    #[test]
    fn labeling_negative_loop() {
        let g = graph(&["v"], &[("l", "v", "v", 3, -3)]);
        let comp = Component {
            vertices: vec![v("v")],
            edges: vec![e("l")],
        };
        let z = run_labeling(&g, &comp);
        assert!(!z.complete);
        assert_eq!(
            z.failure,
            Some(LabelingFailure {
                vertex: v("v"),
                cause: FailureCause::NegativeLoop(e("l")),
            })
        );
    }

    #[test]
    fn labeling_propagates_and_conflicts() {
        let ok = graph(
            &["v1", "v2"],
            &[("a", "v1", "v2", 3, 3), ("b", "v1", "v2", 9, 3)],
        );
        let comp = Component {
            vertices: vec![v("v1"), v("v2")],
            edges: vec![e("a"), e("b")],
        };
        let z = run_labeling(&ok, &comp);
        assert!(z.complete);
        assert_eq!(z.zeta[&v("v1")], 1);
        assert_eq!(z.zeta[&v("v2")], 1);

        let bad = graph(
            &["v1", "v2"],
            &[("a", "v1", "v2", 3, 3), ("b", "v1", "v2", 9, -3)],
        );
        let z = run_labeling(&bad, &comp);
        assert!(!z.complete);
        assert!(matches!(
            z.failure,
            Some(LabelingFailure {
                cause: FailureCause::Conflict(_, _),
                ..
            })
        ));
    }

    #[test]
    fn positive_loops_impose_nothing() {
        let g = graph(&["v"], &[("l", "v", "v", 3, 3)]);
        let comp = Component {
            vertices: vec![v("v")],
            edges: vec![e("l")],
        };
        let z = run_labeling(&g, &comp);
        assert!(z.complete);
        assert_eq!(z.zeta[&v("v")], 1);
    }

    #[test]
    fn labeled_edges_satisfy_sign_identity() {
        let g = graph(
            &["v1", "v2", "v3"],
            &[
                ("a", "v1", "v2", 3, -3),
                ("b", "v2", "v3", 3, 3),
                ("c", "v1", "v3", 9, -3),
            ],
        );
        let comp = Component {
            vertices: g.vertices().to_vec(),
            edges: g.edges().iter().map(|e| e.id.clone()).collect(),
        };
        let z = run_labeling(&g, &comp);
        assert!(z.complete);
        for ed in g.edges() {
            assert_eq!(z.zeta[&ed.from] * z.zeta[&ed.to], xi(ed));
        }
        assert_eq!(z.zeta[g.least_vertex()], 1);
    }

    #[test]
    fn check_condition_examples() {
        let bad = graph(&["v"], &[("l1", "v", "v", 9, 9), ("l2", "v", "v", 3, -3)]);
        let rad = compute_radical(&bad).unwrap();
        let report = check_condition(&bad, &rad).unwrap();
        assert!(!report.holds);
        assert!(report.total_zeta().is_none());

        let ok = graph(&["v"], &[("l1", "v", "v", 3, 3), ("l2", "v", "v", 3, -3)]);
        let rad = compute_radical(&ok).unwrap();
        let report = check_condition(&ok, &rad).unwrap();
        assert!(report.holds);
        assert!(report.e_prime.is_empty());

        let vacuous = graph(&["v"], &[("l", "v", "v", 27, -27)]);
        let rad = compute_radical(&vacuous).unwrap();
        let report = check_condition(&vacuous, &rad).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn check_condition_preconditions() {
        let not_reduced = graph(&["v1", "v2"], &[("e", "v1", "v2", 1, 3), ("l", "v2", "v2", 3, -3)]);
        let rad_err = compute_radical(&not_reduced).unwrap();
        assert!(matches!(
            check_condition(&not_reduced, &rad_err),
            Err(Error::PreconditionViolated(_))
        ));

        let trivial_image = graph(&["v"], &[("l", "v", "v", 3, 3)]);
        let rad = compute_radical(&trivial_image).unwrap();
        assert!(matches!(
            check_condition(&trivial_image, &rad),
            Err(Error::PreconditionViolated(_))
        ));

        let mixed = graph(&["v"], &[("l1", "v", "v", 3, 3), ("l2", "v", "v", 15, -15)]);
        let rad = compute_radical(&mixed).unwrap();
        assert!(matches!(
            check_condition(&mixed, &rad),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        // forest: no cycles
        let g = graph(&["v1", "v2"], &[("a", "v1", "v2", 2, 3)]);
        let all: Vec<EdgeId> = g.edges().iter().map(|e| e.id.clone()).collect();
        assert!(oracle_cycle_check(&g, g.vertices(), &all));

        // one negative loop
        let g = graph(&["v"], &[("l", "v", "v", 3, -3)]);
        let all: Vec<EdgeId> = g.edges().iter().map(|e| e.id.clone()).collect();
        assert!(!oracle_cycle_check(&g, g.vertices(), &all));

        // 4-cycle with two negative edges: the only basis cycle is positive
        let g = graph(
            &["v1", "v2", "v3", "v4"],
            &[
                ("a", "v1", "v2", 3, -3),
                ("b", "v2", "v3", 3, 3),
                ("c", "v3", "v4", 3, -3),
                ("d", "v4", "v1", 3, 3),
            ],
        );
        let all: Vec<EdgeId> = g.edges().iter().map(|e| e.id.clone()).collect();
        assert!(oracle_cycle_check(&g, g.vertices(), &all));
    }

    #[test]
    fn labeling_agrees_with_oracle_on_components() {
        let g = graph(
            &["v1", "v2", "v3"],
            &[
                ("a", "v1", "v2", 3, -3),
                ("b", "v2", "v3", 3, 3),
                ("c", "v1", "v3", 9, 3),
            ],
        );
        let comp = Component {
            vertices: g.vertices().to_vec(),
            edges: g.edges().iter().map(|e| e.id.clone()).collect(),
        };
        let labeled = run_labeling(&g, &comp).complete;
        let all: Vec<EdgeId> = g.edges().iter().map(|e| e.id.clone()).collect();
        assert_eq!(labeled, oracle_cycle_check(&g, g.vertices(), &all));
    }
}
