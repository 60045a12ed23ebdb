//! Collapse a graph to reduced form step by step, then normalize signs.
//!
//! Run: cargo run --example reduce_walkthrough

use gbs::graph::{spanning_tree, LabeledGraph};
use gbs::normalize::{elementary_collapse, make_t_positive, reduce, sign_change, SignTarget};

fn main() -> gbs::Result<()> {
    // a chain whose unit labels collapse away entirely
    let chain = LabeledGraph::parse(
        r#"{
            "vertices": ["v1", "v2", "v3"],
            "edges": [
                { "id": "e1", "from": "v1", "to": "v2", "label_from": 1, "label_to": 2 },
                { "id": "e2", "from": "v2", "to": "v3", "label_from": 1, "label_to": 3 }
            ]
        }"#,
    )?;
    let (reduced, trace) = reduce(&chain);
    println!("chain reduces to {} vertices, {} edges", reduced.vertices().len(), reduced.edges().len());
    for step in &trace {
        println!(
            "  collapsed edge {} absorbing vertex {} (labels around it scaled by {})",
            step.edge, step.absorbed, step.multiplier
        );
    }

    // a single collapse, watched closely: the loop labels pick up the factor 3
    let seg_with_loop = LabeledGraph::parse(
        r#"{
            "vertices": ["v1", "v2"],
            "edges": [
                { "id": "e", "from": "v1", "to": "v2", "label_from": 1, "label_to": 3 },
                { "id": "l", "from": "v1", "to": "v1", "label_from": 5, "label_to": 7 }
            ]
        }"#,
    )?;
    let collapsed = elementary_collapse(&seg_with_loop, &"e".into(), gbs::graph::End::Plus)?;
    let l = collapsed.edge(&"l".into()).expect("loop survives");
    println!("\nafter one collapse the loop carries ({}, {})", l.label_from, l.label_to);

    // admissible sign changes preserve the group; two flips cancel
    let flipped = sign_change(&collapsed, &SignTarget::Edge("l".into()))?;
    let back = sign_change(&flipped, &SignTarget::Edge("l".into()))?;
    assert_eq!(back, collapsed);

    // make all spanning-tree labels positive
    let mixed = LabeledGraph::parse(
        r#"{
            "vertices": ["a", "b", "c"],
            "edges": [
                { "id": "t1", "from": "a", "to": "b", "label_from": -2, "label_to": 3 },
                { "id": "t2", "from": "b", "to": "c", "label_from": 4, "label_to": -5 },
                { "id": "x", "from": "c", "to": "a", "label_from": 6, "label_to": 7 }
            ]
        }"#,
    )?;
    let t = spanning_tree(&mixed);
    let positive = make_t_positive(&mixed, &t);
    println!("\ntree labels after sign normalization:");
    for id in &t.tree_edges {
        let e = positive.edge(id).expect("tree edge");
        println!("  {id}: ({}, {})", e.label_from, e.label_to);
    }
    Ok(())
}
