//! Compute the modular generators, classify the image, and describe the
//! subring of the rationals it generates.
//!
//! Run: cargo run --example modular_image

use gbs::graph::{spanning_tree, LabeledGraph};
use gbs::modular::{classify_modular_image, delta_generators, modular_subring, ImageClass};

fn show(name: &str, text: &str) -> gbs::Result<()> {
    let g = LabeledGraph::parse(text)?;
    let t = spanning_tree(&g);
    match delta_generators(&g, &t) {
        Err(e) => println!("{name}: {e}"),
        Ok(generators) => {
            let image = classify_modular_image(&generators);
            let subring = modular_subring(&generators);
            let values: Vec<String> = generators
                .iter()
                .map(|(e, q)| format!("{e} -> {q}"))
                .collect();
            println!(
                "{name}: generators [{}], class {:?}, inverted primes {:?}",
                values.join(", "),
                match image.class {
                    ImageClass::Trivial => "{1}".to_string(),
                    ImageClass::PlusMinusOne => "{1,-1}".to_string(),
                    ImageClass::Other(q) => format!("contains {q}"),
                },
                subring.inverted_primes
            );
        }
    }
    Ok(())
}

fn main() -> gbs::Result<()> {
    show(
        "BS(2,3) loop",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":2,"label_to":3}]}"#,
    )?;
    show(
        "BS(2,-2) loop",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":2,"label_to":-2}]}"#,
    )?;
    show(
        "theta graph",
        r#"{"vertices":["v1","v2"],"edges":[
            {"id":"a","from":"v1","to":"v2","label_from":2,"label_to":3},
            {"id":"b","from":"v1","to":"v2","label_from":2,"label_to":3},
            {"id":"c","from":"v1","to":"v2","label_from":4,"label_to":6}]}"#,
    )?;
    show(
        "Klein loop (elementary, so undefined)",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":1,"label_to":-1}]}"#,
    )?;
    show(
        "BS(1,5) loop (solvable but defined)",
        r#"{"vertices":["v"],"edges":[{"id":"e","from":"v","to":"v","label_from":1,"label_to":5}]}"#,
    )?;
    Ok(())
}
