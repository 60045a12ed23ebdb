//! The sign-labeling condition: build the subgraph of edges whose subgroups
//! strictly contain the radical, label its components, and cross-check the
//! outcome against the fundamental-cycle oracle.
//!
//! Run: cargo run --example elliptic_condition

use gbs::elliptic::{check_condition, oracle_cycle_check, FailureCause};
use gbs::graph::LabeledGraph;
use gbs::radical::compute_radical;

fn show(name: &str, text: &str) {
    let g = LabeledGraph::parse(text).expect("valid graph");
    let rad = match compute_radical(&g) {
        Ok(rad) => rad,
        Err(e) => {
            println!("{name}: {e}");
            return;
        }
    };
    match check_condition(&g, &rad) {
        Err(e) => println!("{name}: {e}"),
        Ok(report) => {
            println!(
                "{name}: E' = {:?}, condition {}",
                report.e_prime,
                if report.holds { "holds" } else { "fails" }
            );
            for (comp, labeling) in &report.components {
                if labeling.complete {
                    let zeta: Vec<String> = labeling
                        .zeta
                        .iter()
                        .map(|(v, s)| format!("{v}:{}", if *s > 0 { "+1" } else { "-1" }))
                        .collect();
                    println!("  component {:?}: labeled {{{}}}", comp.vertices, zeta.join(", "));
                } else if let Some(f) = &labeling.failure {
                    match &f.cause {
                        FailureCause::NegativeLoop(e) => println!(
                            "  component {:?}: blocked at {} by negative loop {e}",
                            comp.vertices, f.vertex
                        ),
                        FailureCause::Conflict(a, b) => println!(
                            "  component {:?}: blocked at {} by conflicting edges {a}, {b}",
                            comp.vertices, f.vertex
                        ),
                    }
                }
            }
            // the cycle oracle must agree with the labeling outcome
            let oracle = oracle_cycle_check(&g, g.vertices(), &report.e_prime);
            assert_eq!(report.holds, oracle);
            println!("  cycle oracle agrees: {oracle}");
        }
    }
}

fn main() {
    show(
        "loops (9,9),(3,-3): a negative loop survives in E'",
        r#"{"vertices":["v"],"edges":[
            {"id":"l1","from":"v","to":"v","label_from":9,"label_to":9},
            {"id":"l2","from":"v","to":"v","label_from":3,"label_to":-3}]}"#,
    );
    show(
        "loops (3,3),(3,-3): E' is empty, condition vacuous",
        r#"{"vertices":["v"],"edges":[
            {"id":"l1","from":"v","to":"v","label_from":3,"label_to":3},
            {"id":"l2","from":"v","to":"v","label_from":3,"label_to":-3}]}"#,
    );
    show(
        "segment (3,3) with loop (9,-9): labels propagate across the segment",
        r#"{"vertices":["v1","v2"],"edges":[
            {"id":"e","from":"v1","to":"v2","label_from":3,"label_to":3},
            {"id":"l","from":"v2","to":"v2","label_from":9,"label_to":-9}]}"#,
    );
}
