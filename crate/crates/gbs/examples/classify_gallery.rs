//! Full classification reports for a gallery of presentations, including a
//! row of the Baumslag-Solitar table.
//!
//! Run: cargo run --example classify_gallery

use num_bigint::BigInt;

use gbs::arith::PrimeSet;
use gbs::classify::{classify_all, Property};
use gbs::graph::{LabeledEdge, LabeledGraph, VertexId};

fn bs_loop(m: i64, n: i64) -> LabeledGraph {
    LabeledGraph::new(
        vec![VertexId("v".into())],
        vec![LabeledEdge::new("e", "v", "v", m, n)],
    )
    .expect("valid loop")
}

fn summary(name: &str, g: &LabeledGraph, rho: Option<&PrimeSet>) {
    let report = classify_all(g, rho);
    let flags: Vec<String> = report
        .verdicts
        .iter()
        .map(|v| {
            let short = match &v.property {
                Property::ResiduallyFinite => "finite".into(),
                Property::ResiduallyRho(r) => format!("rho({r})"),
                Property::ResiduallyNilpotent => "nilpotent".into(),
                Property::ResiduallyTorsionFreeNilpotent => "tf-nilpotent".into(),
                Property::ResiduallyFree => "free".into(),
                Property::ResiduallyTorsionFreeSolvable => "tf-solvable".into(),
            };
            format!("{short}={}", if v.holds { "yes" } else { "no" })
        })
        .collect();
    println!("{name:34} shape {:12} {}", report.analysis.shape.name(), flags.join(" "));
}

fn main() -> gbs::Result<()> {
    let rho2 = PrimeSet::explicit(vec![BigInt::from(2)]).unwrap();

    println!("named presentations (residually-rho column uses rho = {{2}}):");
    summary("point (Z)", &LabeledGraph::parse(r#"{"vertices":["v"],"edges":[]}"#)?, Some(&rho2));
    summary("loop (1,1) = Z x Z", &bs_loop(1, 1), Some(&rho2));
    summary("loop (1,-1) = Klein", &bs_loop(1, -1), Some(&rho2));
    summary(
        "segment (2,2) = Klein",
        &LabeledGraph::parse(
            r#"{"vertices":["v1","v2"],"edges":[{"id":"e","from":"v1","to":"v2","label_from":2,"label_to":2}]}"#,
        )?,
        Some(&rho2),
    );
    summary(
        "two unit loops = F2 x Z",
        &LabeledGraph::parse(
            r#"{"vertices":["v"],"edges":[
                {"id":"a","from":"v","to":"v","label_from":1,"label_to":1},
                {"id":"b","from":"v","to":"v","label_from":1,"label_to":1}]}"#,
        )?,
        Some(&rho2),
    );
    summary(
        "loops (9,9),(3,-3)",
        &LabeledGraph::parse(
            r#"{"vertices":["v"],"edges":[
                {"id":"l1","from":"v","to":"v","label_from":9,"label_to":9},
                {"id":"l2","from":"v","to":"v","label_from":3,"label_to":-3}]}"#,
        )?,
        Some(&rho2),
    );

    println!("\nBaumslag-Solitar loops BS(m,n), m = 2:");
    for n in [-6, -4, -2, 2, 3, 4, 6] {
        summary(&format!("BS(2,{n})"), &bs_loop(2, n), Some(&rho2));
    }

    // an explanation trace, in full
    println!("\nwhy loops (9,9),(3,-3) are not residually nilpotent:");
    let g = LabeledGraph::parse(
        r#"{"vertices":["v"],"edges":[
            {"id":"l1","from":"v","to":"v","label_from":9,"label_to":9},
            {"id":"l2","from":"v","to":"v","label_from":3,"label_to":-3}]}"#,
    )?;
    let verdict = gbs::classify::check_residually_nilpotent(&g);
    for t in &verdict.trace {
        println!("  [{}] {}", t.statement, t.reason);
    }
    println!("  witness: {:?}", verdict.witness);
    Ok(())
}
