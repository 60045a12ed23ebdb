//! Build the two explicit homomorphisms and verify every defining relation:
//! the split-extension assignment g_v -> mu/mu(v), t_e -> (multiplication by
//! the modular value), and the cyclic-target assignment g_v -> zeta(v) *
//! mu/mu(v) mod mu, t_e -> 0.
//!
//! Run: cargo run --example verified_homomorphisms

use num_bigint::BigInt;

use gbs::arith::additive_order;
use gbs::elliptic::check_condition;
use gbs::graph::{LabeledGraph, VertexId};
use gbs::radical::{build_sigma_51, build_sigma_62, compute_radical, verify_sigma};

fn main() -> gbs::Result<()> {
    // split-extension homomorphism on the segment (2,3)
    let seg = LabeledGraph::parse(
        r#"{"vertices":["v1","v2"],"edges":[{"id":"e","from":"v1","to":"v2","label_from":2,"label_to":3}]}"#,
    )?;
    let rad = compute_radical(&seg)?;
    let sigma = build_sigma_51(&seg, &rad)?;
    println!("segment (2,3): vertex images {:?}", sigma.vertex_images);
    let (ok, checks) = verify_sigma(&seg, &sigma);
    for c in &checks {
        println!("  relation at {}: {} = {} -> {}", c.edge, c.lhs, c.rhs, c.holds);
    }
    assert!(ok);

    // a corrupted assignment is caught with the failing relation
    let mut broken = sigma.clone();
    broken
        .vertex_images
        .insert(VertexId("v1".into()), BigInt::from(4));
    let (ok, checks) = verify_sigma(&seg, &broken);
    assert!(!ok);
    println!(
        "corrupted assignment rejected at relation {} ({} != {})",
        checks.last().unwrap().edge,
        checks.last().unwrap().lhs,
        checks.last().unwrap().rhs
    );

    // cyclic-target homomorphism on segment (3,3) + loop (9,-9)
    let g = LabeledGraph::parse(
        r#"{"vertices":["v1","v2"],"edges":[
            {"id":"e","from":"v1","to":"v2","label_from":3,"label_to":3},
            {"id":"l","from":"v2","to":"v2","label_from":9,"label_to":-9}]}"#,
    )?;
    let rad = compute_radical(&g)?;
    let report = check_condition(&g, &rad)?;
    let zeta = report.total_zeta().expect("condition holds here");
    let sigma0 = build_sigma_62(&g, &rad, &zeta)?;
    println!(
        "\nsegment (3,3) + loop (9,-9): images mod {} are {:?}",
        rad.mu, sigma0.vertex_images
    );
    let (ok, _) = verify_sigma(&g, &sigma0);
    assert!(ok);
    for (v, image) in &sigma0.vertex_images {
        let order = additive_order(image, &rad.mu);
        println!("  additive order of the image of {v}: {order} (= mu({v}))");
        assert_eq!(order, rad.mu_v[v]);
    }
    Ok(())
}
