//! Run the randomized invariant harness in-process and print the report,
//! then demonstrate the negative control: a deliberately broken sign
//! function is caught and the counterexample is shrunk.
//!
//! Run: cargo run --example invariant_fuzz

use gbs::fuzz::{run, FuzzConfig, Sabotage};

fn main() {
    let report = run(&FuzzConfig::new(2024, 300));
    println!(
        "seed {} over {} graphs: radical-eligible {}, split-extension checks {}, cyclic checks {}",
        report.seed,
        report.graphs_checked,
        report.radical_eligible,
        report.sigma51_verified,
        report.sigma62_verified
    );
    match &report.violation {
        None => println!("all invariants hold"),
        Some(v) => println!("violation in {} at iteration {}: {}", v.check, v.iteration, v.detail),
    }
    assert!(report.clean());

    let mut sabotaged = FuzzConfig::new(2024, 300);
    sabotaged.sabotage = Some(Sabotage::NegateXi);
    let report = run(&sabotaged);
    let v = report.violation.expect("the harness must catch the sabotage");
    println!(
        "\nnegative control: broken sign function caught by {} at iteration {}",
        v.check, v.iteration
    );
    println!("shrunk counterexample: {}", v.graph);
}
