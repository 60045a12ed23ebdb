//! Seeded random graph generation for the invariant suites. The generator
//! biases label magnitudes toward balanced cycles so that the radical and
//! sign-labeling paths are exercised; uniform labels almost always push the
//! modular image outside the units.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use crate::graph::{spanning_tree, LabeledEdge, LabeledGraph, VertexId};
use crate::normalize::{sign_change, SignTarget};

const MAX_VERTICES: usize = 6;
const MAX_EDGES: usize = 8;
const MAX_MAGNITUDE: i64 = 12;

fn pool_magnitudes(pool: &[i64]) -> Vec<i64> {
    let mut out = vec![1];
    for &p in pool {
        let mut q = p;
        while q <= MAX_MAGNITUDE {
            if !out.contains(&q) {
                out.push(q);
            }
            // also products of two pool primes
            for &r in pool {
                let m = q * r;
                if m <= MAX_MAGNITUDE && !out.contains(&m) {
                    out.push(m);
                }
            }
            q *= p;
        }
    }
    out.sort_unstable();
    out
}

/// A random connected labeled graph with 1..=6 vertices, at most 8 edges,
/// and labels of magnitude at most 12 drawn from a random prime pool.
pub fn random_graph<R: Rng>(rng: &mut R) -> LabeledGraph {
    let nv = rng.gen_range(1..=MAX_VERTICES);
    let vertices: Vec<VertexId> = (1..=nv).map(|i| VertexId(format!("v{i}"))).collect();

    let pools: [&[i64]; 5] = [&[2], &[3], &[5], &[2, 3], &[3, 5]];
    let pool = pools[rng.gen_range(0..pools.len())];
    let magnitudes = pool_magnitudes(pool);
    let pick_label = |rng: &mut R| -> i64 {
        let m = magnitudes[rng.gen_range(0..magnitudes.len())];
        if rng.gen_bool(0.35) {
            -m
        } else {
            m
        }
    };

    let mut edges = Vec::new();
    let mut next_edge = 1;
    for i in 2..=nv {
        let parent = rng.gen_range(1..i);
        edges.push(LabeledEdge::new(
            format!("e{next_edge}"),
            format!("v{parent}"),
            format!("v{i}"),
            pick_label(rng),
            pick_label(rng),
        ));
        next_edge += 1;
    }
    let extra = rng.gen_range(0..=(MAX_EDGES - edges.len()).min(4));
    for _ in 0..extra {
        let a = rng.gen_range(1..=nv);
        let b = rng.gen_range(1..=nv);
        edges.push(LabeledEdge::new(
            format!("e{next_edge}"),
            format!("v{a}"),
            format!("v{b}"),
            pick_label(rng),
            pick_label(rng),
        ));
        next_edge += 1;
    }

    let g = LabeledGraph::new(vertices, edges).expect("construction is valid");

    // in balanced mode, rescale non-tree labels so every cycle has modulus
    // of magnitude one whenever small enough labels exist
    if rng.gen_bool(0.65) {
        balance_cycles(&g, rng)
    } else {
        g
    }
}

fn balance_cycles<R: Rng>(g: &LabeledGraph, rng: &mut R) -> LabeledGraph {
    let t = spanning_tree(g);
    let mut edges = g.edges().to_vec();
    for e in &mut edges {
        if t.is_tree_edge(&e.id) {
            continue;
        }
        // want |label_from| * s(from) == |label_to| * s(to)
        let ratio: BigRational = &t.scale[&e.to] / &t.scale[&e.from];
        let (num, den) = (ratio.numer().abs(), ratio.denom().abs());
        let (Some(num), Some(den)) = (num.to_i64(), den.to_i64()) else {
            continue;
        };
        if num > MAX_MAGNITUDE || den > MAX_MAGNITUDE {
            continue;
        }
        let max_mult = MAX_MAGNITUDE / num.max(den);
        let k = rng.gen_range(1..=max_mult);
        let sign_from = if e.label_from.is_negative() { -1 } else { 1 };
        let sign_to = if e.label_to.is_negative() { -1 } else { 1 };
        e.label_from = BigInt::from(sign_from * num * k);
        e.label_to = BigInt::from(sign_to * den * k);
    }
    LabeledGraph::new(g.vertices().to_vec(), edges).expect("rebalancing keeps validity")
}

/// Applies up to `max` random admissible sign changes.
pub fn random_sign_changes<R: Rng>(g: &LabeledGraph, rng: &mut R, max: usize) -> LabeledGraph {
    let mut current = g.clone();
    let count = rng.gen_range(0..=max);
    for _ in 0..count {
        let target = if rng.gen_bool(0.5) {
            let v = &current.vertices()[rng.gen_range(0..current.vertices().len())];
            SignTarget::Vertex(v.clone())
        } else if current.edges().is_empty() {
            continue;
        } else {
            let e = &current.edges()[rng.gen_range(0..current.edges().len())];
            SignTarget::Edge(e.id.clone())
        };
        current = sign_change(&current, &target).expect("targets exist");
    }
    current
}

/// Balanced check helper used by the suites: true when every non-tree edge
/// has a magnitude-one modulus, so the radical machinery applies.
pub fn has_unit_modulus(g: &LabeledGraph) -> bool {
    let t = spanning_tree(g);
    g.edges().iter().all(|e| {
        t.is_tree_edge(&e.id) || {
            let lhs = BigRational::from(e.label_from.abs()) * &t.scale[&e.from];
            let rhs = BigRational::from(e.label_to.abs()) * &t.scale[&e.to];
            lhs == rhs
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_is_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert_eq!(random_graph(&mut a), random_graph(&mut b));
        }
    }

    #[test]
    fn generator_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = random_graph(&mut rng);
            assert!(g.vertices().len() <= MAX_VERTICES);
            assert!(g.edges().len() <= MAX_EDGES);
            for e in g.edges() {
                assert!(e.label_from.abs() <= BigInt::from(MAX_MAGNITUDE));
                assert!(e.label_to.abs() <= BigInt::from(MAX_MAGNITUDE));
            }
        }
    }

    #[test]
    fn balanced_graphs_appear_often() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut balanced = 0;
        for _ in 0..300 {
            if has_unit_modulus(&random_graph(&mut rng)) {
                balanced += 1;
            }
        }
        assert!(balanced >= 100, "only {balanced} balanced graphs");
    }
}
