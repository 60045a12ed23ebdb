//! Modular homomorphism data: the exact rational value attached to each
//! stable letter, the classification of the generated image, and the subring
//! of the rationals it generates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith;
use crate::classify::detect_shape;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, SpanningData};

/// Classification of the image of the modular homomorphism, together with
/// the stable-letter values that generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularImage {
    pub generators: Vec<(EdgeId, BigRational)>,
    pub class: ImageClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageClass {
    /// Every generator equals 1.
    Trivial,
    /// All generators are +-1 and at least one equals -1.
    PlusMinusOne,
    /// Some generator lies outside {1,-1}; the witness is the first such.
    Other(BigRational),
}

impl ImageClass {
    pub fn contained_in_units(&self) -> bool {
        !matches!(self, ImageClass::Other(_))
    }
}

/// The value of the modular homomorphism on the stable letter of each
/// non-tree edge: (label_to * r(to)) / (label_from * r(from)) with r the
/// signed scale potentials. Tree edges contribute 1 by construction and are
/// omitted.
///
/// Defined only when the presented group is non-elementary.
pub fn delta_generators(
    g: &LabeledGraph,
    t: &SpanningData,
) -> Result<Vec<(EdgeId, BigRational)>> {
    if detect_shape(g).is_elementary() {
        return Err(Error::NotDefined);
    }
    let mut out = Vec::new();
    for e in g.edges() {
        if t.is_tree_edge(&e.id) {
            continue;
        }
        let num = BigRational::from(e.label_to.clone()) * &t.signed_scale[&e.to];
        let den = BigRational::from(e.label_from.clone()) * &t.signed_scale[&e.from];
        out.push((e.id.clone(), num / den));
    }
    Ok(out)
}

/// Splits the generated image into trivial / sign-only / larger.
pub fn classify_modular_image(generators: &[(EdgeId, BigRational)]) -> ModularImage {
    let one = BigRational::one();
    let minus_one = -one.clone();
    let mut class = ImageClass::Trivial;
    for (_, q) in generators {
        if *q == one {
            continue;
        }
        if *q == minus_one {
            if matches!(class, ImageClass::Trivial) {
                class = ImageClass::PlusMinusOne;
            }
        } else {
            class = ImageClass::Other(q.clone());
            break;
        }
    }
    ModularImage {
        generators: generators.to_vec(),
        class,
    }
}

/// Convenience wrapper: generators plus their classification.
pub fn modular_image(g: &LabeledGraph, t: &SpanningData) -> Result<ModularImage> {
    Ok(classify_modular_image(&delta_generators(g, t)?))
}

/// The subring of the rationals generated by the image, described by the set
/// of primes that become invertible: the multiplicative group generated by
/// the values is closed under inverses, so primes of numerators and
/// denominators are inverted alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularSubring {
    pub inverted_primes: BTreeSet<BigInt>,
}

pub fn modular_subring(generators: &[(EdgeId, BigRational)]) -> ModularSubring {
    let mut inverted_primes = BTreeSet::new();
    for (_, q) in generators {
        for part in [q.numer(), q.denom()] {
            if part.abs() > BigInt::one() {
                for p in arith::prime_support(part).expect("non-zero") {
                    inverted_primes.insert(p);
                }
            }
        }
    }
    ModularSubring { inverted_primes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::graph::{spanning_tree, spanning_tree_from, VertexId};
    use crate::testutil::{bs_loop, graph};

    fn gens(g: &LabeledGraph) -> Vec<(EdgeId, BigRational)> {
        delta_generators(g, &spanning_tree(g)).unwrap()
    }

    #[test]
    fn loop_generators() {
        assert_eq!(gens(&bs_loop(2, 3)), vec![(EdgeId("e".into()), rat(3, 2))]);
        assert_eq!(gens(&bs_loop(2, -2)), vec![(EdgeId("e".into()), rat(-1, 1))]);
    }

    #[test]
    fn theta_generators_are_trivial() {
        let theta = graph(
            &["v1", "v2"],
            &[
                ("a", "v1", "v2", 2, 3),
                ("b", "v1", "v2", 2, 3),
                ("c", "v1", "v2", 4, 6),
            ],
        );
        let got = gens(&theta);
        assert_eq!(
            got,
            vec![
                (EdgeId("b".into()), rat(1, 1)),
                (EdgeId("c".into()), rat(1, 1)),
            ]
        );
    }

    #[test]
    fn elementary_inputs_are_rejected() {
        for g in [
            bs_loop(1, 1),
            bs_loop(1, -1),
            graph(&["v1", "v2"], &[("e", "v1", "v2", 2, 2)]),
            graph(&["v1", "v2"], &[("e", "v1", "v2", 1, 1)]),
        ] {
            let t = spanning_tree(&g);
            assert_eq!(delta_generators(&g, &t), Err(Error::NotDefined));
        }
        // solvable but not elementary: still defined
        assert_eq!(gens(&bs_loop(1, 5)), vec![(EdgeId("e".into()), rat(5, 1))]);
    }

    #[test]
    fn image_classification() {
        let e = |s: &str| EdgeId(s.into());
        assert_eq!(
            classify_modular_image(&[(e("a"), rat(1, 1)), (e("b"), rat(1, 1))]).class,
            ImageClass::Trivial
        );
        assert_eq!(
            classify_modular_image(&[(e("a"), rat(-1, 1)), (e("b"), rat(1, 1))]).class,
            ImageClass::PlusMinusOne
        );
        assert_eq!(
            classify_modular_image(&[(e("a"), rat(3, 2))]).class,
            ImageClass::Other(rat(3, 2))
        );
        assert_eq!(classify_modular_image(&[]).class, ImageClass::Trivial);
    }

    #[test]
    fn subring_primes() {
        let e = |s: &str| EdgeId(s.into());
        assert!(modular_subring(&[(e("a"), rat(1, 1)), (e("b"), rat(-1, 1))])
            .inverted_primes
            .is_empty());
        let s = modular_subring(&[(e("a"), rat(3, 2))]);
        assert_eq!(
            s.inverted_primes,
            BTreeSet::from([BigInt::from(2), BigInt::from(3)])
        );
        assert!(modular_subring(&[]).inverted_primes.is_empty());
    }

    #[test]
    fn generators_do_not_depend_on_root() {
        let g = graph(
            &["v1", "v2", "v3"],
            &[
                ("e1", "v1", "v2", 2, 3),
                ("e2", "v2", "v3", 4, 5),
                ("f", "v3", "v1", 7, -11),
                ("l", "v2", "v2", 2, -2),
            ],
        );
        let base = gens(&g);
        let base_class = classify_modular_image(&base).class;
        for root in ["v1", "v2", "v3"] {
            let t = spanning_tree_from(&g, VertexId(root.into()));
            let alt = delta_generators(&g, &t).unwrap();
            // a different root may select a different tree; the image class
            // is what survives
            assert_eq!(base_class, classify_modular_image(&alt).class);
        }
        // rerooting the same tree keeps the values exactly
        let t = spanning_tree(&g);
        for root in ["v1", "v2", "v3"] {
            let rerooted = crate::graph::reroot(&g, &t, VertexId(root.into()));
            assert_eq!(base, delta_generators(&g, &rerooted).unwrap());
        }
    }
}
