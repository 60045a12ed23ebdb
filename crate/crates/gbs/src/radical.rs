//! Indices of the intersection of all edge subgroups: the per-vertex indices
//! mu(v), their least common multiple mu, the per-edge indices k_e, and the
//! explicit homomorphisms built from them, with relation-by-relation
//! verification.
//!
//! Once the modular image sits inside {1,-1}, all vertex groups embed into a
//! single rational line: the generator of the group at v corresponds to the
//! scale s(v). The edge subgroup at the end (e, eps) corresponds to
//! |label(eps)| * s(e(eps)) times the integers, so the intersection of all
//! edge subgroups corresponds to M times the integers, where M is the least
//! common rational multiple of those products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{additive_order, rational_lcm};
use crate::classify::detect_shape;
use crate::error::{Error, Result};
use crate::graph::{spanning_tree, EdgeId, End, LabeledGraph, VertexId};
use crate::modular::delta_generators;

/// The index data of the edge-subgroup intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalData {
    /// mu(v): index of the intersection in the vertex group at v.
    pub mu_v: BTreeMap<VertexId, BigInt>,
    /// Least common multiple of the mu(v).
    pub mu: BigInt,
    /// k_e: index of the intersection in either edge subgroup of e.
    pub k_e: BTreeMap<EdgeId, BigInt>,
    /// Scale of the intersection inside the rational line.
    pub intersection_scale: BigRational,
    /// True when the input graph is reduced, in which case the intersection
    /// is the cyclic radical of the presented group.
    pub cyclic_radical: bool,
}

/// Computes the radical indices. Requires a non-elementary group whose
/// modular image is contained in {1,-1}; the latter is exactly the
/// magnitude-consistency of the scale potentials around every cycle.
pub fn compute_radical(g: &LabeledGraph) -> Result<RadicalData> {
    if detect_shape(g).is_elementary() {
        return Err(Error::Elementary);
    }
    let t = spanning_tree(g);
    for (_, q) in delta_generators(g, &t)? {
        if q.abs() != BigRational::one() {
            return Err(Error::ModularImageTooBig(q.to_string()));
        }
    }

    let mut end_scales = Vec::new();
    for e in g.edges() {
        for end in [End::Plus, End::Minus] {
            let s = &t.scale[e.endpoint(end)];
            end_scales.push(BigRational::from(e.label(end).abs()) * s);
        }
    }
    let m = rational_lcm(&end_scales)?;

    let mut mu_v = BTreeMap::new();
    let mut mu = BigInt::one();
    for v in g.vertices() {
        let q = &m / &t.scale[v];
        assert!(q.is_integer(), "index at {v} must be integral");
        let q = q.to_integer();
        assert!(q.is_positive());
        mu = mu.lcm(&q);
        mu_v.insert(v.clone(), q);
    }

    let mut k_e = BTreeMap::new();
    for e in g.edges() {
        let (k, rem) = mu_v[&e.from].div_rem(&e.label_from.abs());
        assert!(rem.is_zero(), "k_e at {} must be integral", e.id);
        let (k_other, rem_other) = mu_v[&e.to].div_rem(&e.label_to.abs());
        assert!(rem_other.is_zero() && k == k_other, "k_e must agree at both ends");
        k_e.insert(e.id.clone(), k);
    }

    // mu divides the product of all label magnitudes
    debug_assert!({
        let prod: BigInt = g
            .edges()
            .iter()
            .map(|e| e.label_from.abs() * e.label_to.abs())
            .product();
        (prod % &mu).is_zero()
    });

    Ok(RadicalData {
        mu_v,
        mu,
        k_e,
        intersection_scale: m,
        cyclic_radical: g.is_reduced(),
    })
}

/// Image of a stable letter under one of the explicit homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LetterImage {
    /// Acts on the integer component by multiplication with the given
    /// rational (the split-extension target).
    Mult(BigRational),
    /// Maps to zero in the cyclic target.
    Zero,
}

/// An assignment of integers to vertex generators and of letter images to
/// stable letters; `modulus` is `None` for the split-extension target and
/// `Some(mu)` for the cyclic target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaHom {
    pub vertex_images: BTreeMap<VertexId, BigInt>,
    pub letter_images: BTreeMap<EdgeId, LetterImage>,
    pub modulus: Option<BigInt>,
}

/// The homomorphism into the split extension: each vertex generator maps to
/// mu/mu(v) and each stable letter to the basis symbol acting as
/// multiplication by its modular value. Requires every tree label positive.
pub fn build_sigma_51(g: &LabeledGraph, rad: &RadicalData) -> Result<SigmaHom> {
    let t = spanning_tree(g);
    for eid in &t.tree_edges {
        let e = g.edge(eid).expect("tree edge");
        if e.label_from.is_negative() || e.label_to.is_negative() {
            return Err(Error::PreconditionViolated(format!(
                "tree edge {eid} carries a negative label; apply the positive form first"
            )));
        }
    }
    let vertex_images = rad
        .mu_v
        .iter()
        .map(|(v, mv)| (v.clone(), &rad.mu / mv))
        .collect();
    let letter_images = delta_generators(g, &t)?
        .into_iter()
        .map(|(e, q)| (e, LetterImage::Mult(q)))
        .collect();
    Ok(SigmaHom {
        vertex_images,
        letter_images,
        modulus: None,
    })
}

/// The homomorphism into the integers mod mu: each vertex generator maps to
/// zeta(v) * mu/mu(v) and every stable letter to zero. `zeta` must label all
/// vertices. In the target, the image of the generator at v has additive
/// order exactly mu(v); this is checked.
pub fn build_sigma_62(
    g: &LabeledGraph,
    rad: &RadicalData,
    zeta: &BTreeMap<VertexId, i8>,
) -> Result<SigmaHom> {
    let mut vertex_images = BTreeMap::new();
    for (v, mv) in &rad.mu_v {
        let sign = *zeta.get(v).ok_or_else(|| {
            Error::ConditionFails(format!("vertex {v} has no sign label"))
        })?;
        let image = (BigInt::from(sign) * &rad.mu / mv).mod_floor(&rad.mu);
        assert_eq!(
            additive_order(&image, &rad.mu),
            *mv,
            "image of the generator at {v} must have order mu(v)"
        );
        vertex_images.insert(v.clone(), image);
    }
    let t = spanning_tree(g);
    let letter_images = g
        .edges()
        .iter()
        .filter(|e| !t.is_tree_edge(&e.id))
        .map(|e| (e.id.clone(), LetterImage::Zero))
        .collect();
    Ok(SigmaHom {
        vertex_images,
        letter_images,
        modulus: Some(rad.mu.clone()),
    })
}

/// One verified defining relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub edge: EdgeId,
    /// Left- and right-hand sides of the image of the edge relation.
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

/// Checks every defining relation of the presentation under the given
/// assignment: for a tree edge the two sides must agree (exactly, or mod the
/// modulus); for a stable letter the left side is first acted on by the
/// letter image. Returns all checks up to and including the first failure.
pub fn verify_sigma(g: &LabeledGraph, sigma: &SigmaHom) -> (bool, Vec<RelationCheck>) {
    let t = spanning_tree(g);
    let mut checks = Vec::new();
    for e in g.edges() {
        let (Some(img_from), Some(img_to)) = (
            sigma.vertex_images.get(&e.from),
            sigma.vertex_images.get(&e.to),
        ) else {
            checks.push(RelationCheck {
                edge: e.id.clone(),
                lhs: BigRational::zero(),
                rhs: BigRational::zero(),
                holds: false,
            });
            return (false, checks);
        };
        let base_lhs = BigRational::from(&e.label_from * img_from);
        let rhs = BigRational::from(&e.label_to * img_to);
        let lhs = if t.is_tree_edge(&e.id) {
            base_lhs
        } else {
            match sigma.letter_images.get(&e.id) {
                Some(LetterImage::Mult(q)) => q * base_lhs,
                Some(LetterImage::Zero) => base_lhs,
                None => {
                    checks.push(RelationCheck {
                        edge: e.id.clone(),
                        lhs: base_lhs,
                        rhs,
                        holds: false,
                    });
                    return (false, checks);
                }
            }
        };
        let holds = match &sigma.modulus {
            None => lhs == rhs,
            Some(m) => {
                let diff = &lhs - &rhs;
                diff.is_integer() && (diff.to_integer() % m).is_zero()
            }
        };
        checks.push(RelationCheck {
            edge: e.id.clone(),
            lhs,
            rhs,
            holds,
        });
        if !checks.last().expect("just pushed").holds {
            return (false, checks);
        }
    }
    (true, checks)
}
