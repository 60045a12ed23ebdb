//! Compute the edge-subgroup intersection indices: mu(v) per vertex, their
//! least common multiple mu, and the per-edge indices k_e.
//!
//! Run: cargo run --example radical_indices

use gbs::graph::LabeledGraph;
use gbs::radical::compute_radical;

fn show(name: &str, text: &str) {
    let g = LabeledGraph::parse(text).expect("valid graph");
    match compute_radical(&g) {
        Err(e) => println!("{name}: {e}"),
        Ok(rad) => {
            let mu_v: Vec<String> = rad.mu_v.iter().map(|(v, m)| format!("{v}:{m}")).collect();
            let k_e: Vec<String> = rad.k_e.iter().map(|(e, k)| format!("{e}:{k}")).collect();
            println!(
                "{name}: M = {}, mu_v = {{{}}}, mu = {}, k_e = {{{}}}, cyclic radical: {}",
                rad.intersection_scale,
                mu_v.join(", "),
                rad.mu,
                k_e.join(", "),
                rad.cyclic_radical
            );
        }
    }
}

fn main() {
    show(
        "segment (2,3)",
        r#"{"vertices":["v1","v2"],"edges":[{"id":"e","from":"v1","to":"v2","label_from":2,"label_to":3}]}"#,
    );
    show(
        "loops (9,9),(3,-3)",
        r#"{"vertices":["v"],"edges":[
            {"id":"l1","from":"v","to":"v","label_from":9,"label_to":9},
            {"id":"l2","from":"v","to":"v","label_from":3,"label_to":-3}]}"#,
    );
    show(
        "loop (2,-2)",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":2,"label_to":-2}]}"#,
    );
    show(
        "segment (3,3) with loop (9,-9)",
        r#"{"vertices":["v1","v2"],"edges":[
            {"id":"e","from":"v1","to":"v2","label_from":3,"label_to":3},
            {"id":"l","from":"v2","to":"v2","label_from":9,"label_to":-9}]}"#,
    );
    show(
        "loop (2,4): image escapes the units",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":2,"label_to":4}]}"#,
    );
    show(
        "Klein segment (2,2): elementary",
        r#"{"vertices":["v1","v2"],"edges":[{"id":"e","from":"v1","to":"v2","label_from":2,"label_to":2}]}"#,
    );
}
