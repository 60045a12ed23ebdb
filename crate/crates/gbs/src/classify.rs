//! The decision layer: shape detection for the solvable cases and the
//! residual-property verdicts, each carrying a trace of the statements it
//! rests on and a machine-readable witness.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_rho_number, multiplicative_order, prime_support, PrimeSet};
use crate::elliptic::{self, ConditionReport, FailureCause};
use crate::error::Result;
use crate::graph::{spanning_tree, EdgeId, End, LabeledGraph, VertexId};
use crate::modular::{modular_image, ImageClass, ModularImage};
use crate::normalize::{reduce, ReductionTrace};
use crate::radical::{compute_radical, RadicalData};

/// Isomorphism type of the presented group as far as the solvable cases are
/// concerned; everything else stays behind `NonSolvable` with its reduced
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupShape {
    /// Infinite cyclic.
    Cyclic,
    /// Free abelian of rank two.
    ZxZ,
    /// The Klein bottle group.
    Klein,
    /// BS(1, n) with |n| >= 2, sign-normalized so the unit label is +1.
    Bs1n(BigInt),
    NonSolvable(LabeledGraph),
}

impl GroupShape {
    pub fn is_elementary(&self) -> bool {
        matches!(self, GroupShape::Cyclic | GroupShape::ZxZ | GroupShape::Klein)
    }

    pub fn is_solvable(&self) -> bool {
        self.is_elementary() || matches!(self, GroupShape::Bs1n(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupShape::Cyclic => "Cyclic",
            GroupShape::ZxZ => "ZxZ",
            GroupShape::Klein => "Klein",
            GroupShape::Bs1n(_) => "BS1n",
            GroupShape::NonSolvable(_) => "NonSolvable",
        }
    }
}

/// Reduces the graph and reads the shape off the reduced form.
pub fn detect_shape(g: &LabeledGraph) -> GroupShape {
    detect_shape_reduced(reduce(g).0)
}

/// Shape of an already-reduced graph.
pub fn detect_shape_reduced(rg: LabeledGraph) -> GroupShape {
    let one = BigInt::one();
    let two = BigInt::from(2);
    if rg.vertices().len() == 1 && rg.edges().is_empty() {
        return GroupShape::Cyclic;
    }
    if rg.vertices().len() == 1 && rg.edges().len() == 1 {
        let e = &rg.edges()[0];
        let unit_from = e.label_from.abs() == one;
        let unit_to = e.label_to.abs() == one;
        if unit_from && unit_to {
            return if elliptic::xi(e) == 1 {
                GroupShape::ZxZ
            } else {
                GroupShape::Klein
            };
        }
        if unit_from != unit_to {
            // BS(a, b) with one unit label is BS(1, a*b) after normalizing
            // the unit side to +1 (and reversing the letter when needed)
            return GroupShape::Bs1n(&e.label_from * &e.label_to);
        }
    }
    if rg.vertices().len() == 2 && rg.edges().len() == 1 {
        let e = &rg.edges()[0];
        if e.label_from.abs() == two && e.label_to.abs() == two {
            return GroupShape::Klein;
        }
    }
    GroupShape::NonSolvable(rg)
}

/// A residual property that can be decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    ResiduallyFinite,
    ResiduallyRho(PrimeSet),
    ResiduallyNilpotent,
    ResiduallyTorsionFreeNilpotent,
    ResiduallyFree,
    ResiduallyTorsionFreeSolvable,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::ResiduallyFinite => "ResiduallyFinite",
            Property::ResiduallyRho(_) => "ResiduallyRho",
            Property::ResiduallyNilpotent => "ResiduallyNilpotent",
            Property::ResiduallyTorsionFreeNilpotent => "ResiduallyTorsionFreeNilpotent",
            Property::ResiduallyFree => "ResiduallyFree",
            Property::ResiduallyTorsionFreeSolvable => "ResiduallyTorsionFreeSolvable",
        }
    }
}

/// One step of the explanation: the statement identifier and what it gave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub statement: String,
    pub reason: String,
}

fn entry(statement: &str, reason: impl Into<String>) -> TraceEntry {
    TraceEntry {
        statement: statement.to_owned(),
        reason: reason.into(),
    }
}

/// Machine-readable evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The prime making a positive criterion work.
    Prime(BigInt),
    /// A modular value outside {1,-1}.
    ModularValue(BigRational),
    /// An edge whose label violates the criterion.
    Edge(EdgeId),
    /// A negative-sign loop blocking the vertex labeling.
    NegativeLoop { vertex: VertexId, edge: EdgeId },
    /// Two edges imposing contradictory signs at a vertex.
    Conflict {
        vertex: VertexId,
        edges: (EdgeId, EdgeId),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub trace: Vec<TraceEntry>,
    pub witness: Option<Witness>,
}

/// Everything the individual verdicts are derived from, computed once.
pub struct Analysis {
    pub reduced: LabeledGraph,
    pub reduction_trace: ReductionTrace,
    pub shape: GroupShape,
    /// Modular data of the reduced graph; `None` for elementary groups.
    pub modular: Option<ModularImage>,
    /// Radical data of the reduced graph; defined when the group is
    /// non-elementary and the modular image sits inside {1,-1}.
    pub radical: Option<RadicalData>,
    /// Sign-labeling over the k_e > 1 subgraph; computed whenever the
    /// radical is and the image is exactly {1,-1}.
    pub condition: Option<ConditionReport>,
}

pub fn analyze(g: &LabeledGraph) -> Analysis {
    let (reduced, reduction_trace) = reduce(g);
    let shape = detect_shape_reduced(reduced.clone());
    let modular = if shape.is_elementary() {
        None
    } else {
        let t = spanning_tree(&reduced);
        Some(modular_image(&reduced, &t).expect("non-elementary"))
    };
    let radical = match &modular {
        Some(m) if m.class.contained_in_units() => {
            Some(compute_radical(&reduced).expect("image inside units"))
        }
        _ => None,
    };
    let condition = match (&modular, &radical) {
        (Some(m), Some(rad)) if m.class == ImageClass::PlusMinusOne => {
            Some(elliptic::condition_report(&reduced, rad))
        }
        _ => None,
    };
    Analysis {
        reduced,
        reduction_trace,
        shape,
        modular,
        radical,
        condition,
    }
}

impl Analysis {
    /// Distinct primes dividing any label of the reduced graph.
    fn label_support(&self) -> BTreeSet<BigInt> {
        let mut out = BTreeSet::new();
        for e in self.reduced.edges() {
            for end in [End::Plus, End::Minus] {
                out.extend(prime_support(e.label(end)).expect("labels are non-zero"));
            }
        }
        out
    }

    fn first_label_outside(&self, rho: &PrimeSet) -> Option<EdgeId> {
        self.reduced.edges().iter().find_map(|e| {
            [End::Plus, End::Minus]
                .into_iter()
                .any(|end| !is_rho_number(e.label(end), rho).expect("non-zero"))
                .then(|| e.id.clone())
        })
    }

    fn modular_class(&self) -> Option<&ImageClass> {
        self.modular.as_ref().map(|m| &m.class)
    }

    fn condition_witness(&self) -> Option<Witness> {
        let report = self.condition.as_ref()?;
        report.components.iter().find_map(|(_, z)| {
            z.failure.as_ref().map(|f| match &f.cause {
                FailureCause::NegativeLoop(e) => Witness::NegativeLoop {
                    vertex: f.vertex.clone(),
                    edge: e.clone(),
                },
                FailureCause::Conflict(a, b) => Witness::Conflict {
                    vertex: f.vertex.clone(),
                    edges: (a.clone(), b.clone()),
                },
            })
        })
    }
}

pub fn check_residually_finite(g: &LabeledGraph) -> Verdict {
    verdict_finite(&analyze(g))
}

pub fn check_residually_rho(g: &LabeledGraph, rho: &PrimeSet) -> Verdict {
    verdict_rho(&analyze(g), rho)
}

pub fn check_residually_nilpotent(g: &LabeledGraph) -> Verdict {
    verdict_nilpotent(&analyze(g))
}

/// Residual freeness; residual torsion-free nilpotence always receives the
/// same boolean.
pub fn check_residually_free(g: &LabeledGraph) -> Verdict {
    verdict_free(&analyze(g), Property::ResiduallyFree)
}

pub(crate) fn verdict_finite(a: &Analysis) -> Verdict {
    let (holds, trace, witness) = if a.shape.is_solvable() {
        (
            true,
            vec![entry(
                "Corollary 1",
                format!("the group is solvable (shape {})", a.shape.name()),
            )],
            None,
        )
    } else {
        match a.modular_class().expect("non-elementary") {
            ImageClass::Trivial | ImageClass::PlusMinusOne => (
                true,
                vec![entry(
                    "Corollary 1",
                    "the modular image is contained in {1,-1}",
                )],
                None,
            ),
            ImageClass::Other(q) => (
                false,
                vec![entry(
                    "Corollary 1",
                    format!("the modular image contains {q}, which is not a unit"),
                )],
                Some(Witness::ModularValue(q.clone())),
            ),
        }
    };
    Verdict {
        property: Property::ResiduallyFinite,
        holds,
        trace,
        witness,
    }
}

pub(crate) fn verdict_rho(a: &Analysis, rho: &PrimeSet) -> Verdict {
    let (holds, trace, witness) = match &a.shape {
        GroupShape::Cyclic => (
            true,
            vec![entry(
                "Proposition 2.4",
                "the infinite cyclic group is free, and free groups are residually in every root class",
            )],
            None,
        ),
        GroupShape::ZxZ => (
            true,
            vec![entry(
                "Theorem 1(2)",
                "BS(1,1): the unit index is a number of every prime set",
            )],
            None,
        ),
        GroupShape::Klein => {
            if rho.contains_two() {
                (
                    true,
                    vec![entry("Theorem 1(3)", "BS(1,-1) with 2 in the prime set")],
                    Some(Witness::Prime(BigInt::from(2))),
                )
            } else {
                (
                    false,
                    vec![entry("Theorem 1(3)", "BS(1,-1) requires 2 in the prime set")],
                    None,
                )
            }
        }
        GroupShape::Bs1n(n) => verdict_rho_bs1n(n, rho),
        GroupShape::NonSolvable(_) => match a.modular_class().expect("non-elementary") {
            ImageClass::Other(q) => (
                false,
                vec![entry(
                    "Theorem 3(3)",
                    format!("the modular image contains {q}, outside {{1,-1}}"),
                )],
                Some(Witness::ModularValue(q.clone())),
            ),
            class => {
                let needs_two = *class == ImageClass::PlusMinusOne;
                if let Some(edge) = a.first_label_outside(rho) {
                    let clause = if needs_two { "Theorem 3(2)" } else { "Theorem 3(1)" };
                    (
                        false,
                        vec![entry(
                            clause,
                            format!("edge {edge} carries a label outside the prime set"),
                        )],
                        Some(Witness::Edge(edge)),
                    )
                } else if needs_two && !rho.contains_two() {
                    (
                        false,
                        vec![entry(
                            "Theorem 3(2)",
                            "the modular image is {1,-1}, so 2 must lie in the prime set",
                        )],
                        None,
                    )
                } else {
                    let clause = if needs_two { "Theorem 3(2)" } else { "Theorem 3(1)" };
                    (
                        true,
                        vec![entry(clause, "all labels are numbers of the prime set")],
                        None,
                    )
                }
            }
        },
    };
    Verdict {
        property: Property::ResiduallyRho(rho.clone()),
        holds,
        trace,
        witness,
    }
}

fn verdict_rho_bs1n(n: &BigInt, rho: &PrimeSet) -> (bool, Vec<TraceEntry>, Option<Witness>) {
    match rho {
        PrimeSet::AllPrimes => (
            true,
            vec![entry(
                "Theorem 1(4)",
                format!("BS(1,{n}): any prime not dividing {n} has an admissible order"),
            )],
            None,
        ),
        PrimeSet::Explicit(primes) => {
            for p in primes {
                if (n % p).is_zero() {
                    continue;
                }
                let ord = multiplicative_order(n, p).expect("p does not divide n");
                if is_rho_number(&ord, rho).expect("order is positive") {
                    return (
                        true,
                        vec![entry(
                            "Theorem 1(4)",
                            format!(
                                "BS(1,{n}): p = {p} does not divide {n} and the order of {n} mod {p} is {ord}"
                            ),
                        )],
                        Some(Witness::Prime(p.clone())),
                    );
                }
            }
            (
                false,
                vec![entry(
                    "Theorem 1(4)",
                    format!("BS(1,{n}): no prime of the set avoids {n} with an admissible order"),
                )],
                None,
            )
        }
    }
}

pub(crate) fn verdict_nilpotent(a: &Analysis) -> Verdict {
    let two = BigInt::from(2);
    let (holds, trace, witness) = match &a.shape {
        GroupShape::Cyclic => (
            true,
            vec![entry(
                "Theorem 6",
                "the infinite cyclic group is the direct product of the trivial free group and Z \
                 (the statement is for non-cyclic groups; the cyclic case holds directly)",
            )],
            None,
        ),
        GroupShape::ZxZ => (
            true,
            vec![entry("Theorem 2", "BS(1,1) with n = 1 != 2")],
            None,
        ),
        GroupShape::Klein => (
            true,
            vec![entry("Theorem 2", "BS(1,-1) with n = -1 != 2")],
            None,
        ),
        GroupShape::Bs1n(n) => {
            if *n == two {
                (
                    false,
                    vec![entry("Theorem 2", "BS(1,2) is excluded")],
                    None,
                )
            } else {
                (
                    true,
                    vec![entry("Theorem 2", format!("BS(1,{n}) with n != 2"))],
                    None,
                )
            }
        }
        GroupShape::NonSolvable(_) => match a.modular_class().expect("non-elementary") {
            ImageClass::Other(q) => (
                false,
                vec![entry(
                    "Theorem 5(3)",
                    format!("the modular image contains {q}, outside {{1,-1}}"),
                )],
                Some(Witness::ModularValue(q.clone())),
            ),
            class => {
                let support = a.label_support();
                if support.len() > 1 {
                    let first_prime = support.iter().next().expect("non-empty").clone();
                    let offending = a
                        .reduced
                        .edges()
                        .iter()
                        .find(|e| {
                            [End::Plus, End::Minus].into_iter().any(|end| {
                                prime_support(e.label(end))
                                    .expect("non-zero")
                                    .iter()
                                    .any(|p| *p != first_prime)
                            })
                        })
                        .map(|e| Witness::Edge(e.id.clone()));
                    let clause = if *class == ImageClass::Trivial {
                        "Theorem 5(1)"
                    } else {
                        "Theorem 5(2c)"
                    };
                    (
                        false,
                        vec![entry(
                            clause,
                            format!(
                                "the labels involve {} distinct primes, so they are powers of no single prime",
                                support.len()
                            ),
                        )],
                        offending,
                    )
                } else {
                    let p = support.iter().next().cloned().unwrap_or_else(|| two.clone());
                    if *class == ImageClass::Trivial {
                        (
                            true,
                            vec![
                                entry(
                                    "Theorem 5(1)",
                                    format!("all labels are powers of p = {p}"),
                                ),
                                entry(
                                    "Theorem 3(1)",
                                    "the group is residually a finite p-group",
                                ),
                            ],
                            Some(Witness::Prime(p)),
                        )
                    } else if p == two {
                        (
                            true,
                            vec![entry(
                                "Theorem 5(2c)",
                                "all labels are powers of 2; no sign condition is needed",
                            )],
                            Some(Witness::Prime(two)),
                        )
                    } else {
                        let report = a.condition.as_ref().expect("image is {1,-1}");
                        if report.holds {
                            (
                                true,
                                vec![
                                    entry(
                                        "Theorem 5(2c)",
                                        format!("all labels are powers of p = {p}"),
                                    ),
                                    entry(
                                        "Proposition 6.1",
                                        "every component of the k_e > 1 subgraph admits a sign labeling",
                                    ),
                                    entry(
                                        "Proposition 6.2",
                                        "hence every elliptic element conjugate to its inverse lies in the cyclic radical",
                                    ),
                                ],
                                Some(Witness::Prime(p)),
                            )
                        } else {
                            (
                                false,
                                vec![
                                    entry(
                                        "Theorem 5(2c)",
                                        format!(
                                            "all labels are powers of p = {p} != 2, so the sign condition must hold"
                                        ),
                                    ),
                                    entry(
                                        "Proposition 6.1",
                                        "a component of the k_e > 1 subgraph admits no sign labeling",
                                    ),
                                ],
                                a.condition_witness(),
                            )
                        }
                    }
                }
            }
        },
    };
    Verdict {
        property: Property::ResiduallyNilpotent,
        holds,
        trace,
        witness,
    }
}

pub(crate) fn verdict_free(a: &Analysis, property: Property) -> Verdict {
    let one = BigInt::one();
    let (holds, trace) = match &a.shape {
        GroupShape::Cyclic => (
            true,
            vec![entry(
                "Theorem 6",
                "the infinite cyclic group is free; the statement is for non-cyclic groups, \
                 and the cyclic case holds directly",
            )],
        ),
        GroupShape::ZxZ => (
            true,
            vec![entry("Theorem 6", "BS(1,1) is the direct product of Z and Z")],
        ),
        GroupShape::Klein => (
            false,
            vec![entry(
                "Theorem 6",
                "the Klein bottle group has 2-torsion in its abelianization, so it is not free times cyclic",
            )],
        ),
        GroupShape::Bs1n(n) => (
            false,
            vec![entry(
                "Theorem 6",
                format!("BS(1,{n}) is solvable and not free times cyclic"),
            )],
        ),
        GroupShape::NonSolvable(rg) => {
            let all_units = rg.edges().iter().all(|e| {
                e.label_from.abs() == one && e.label_to.abs() == one
            });
            let trivial_image = a.modular_class() == Some(&ImageClass::Trivial);
            if all_units && trivial_image {
                (
                    true,
                    vec![entry(
                        "Theorem 6",
                        "every label is a unit and the modular image is trivial: the group is free times cyclic",
                    )],
                )
            } else if !all_units {
                (
                    false,
                    vec![entry(
                        "Theorem 6",
                        "a non-unit label obstructs a free-times-cyclic decomposition",
                    )],
                )
            } else {
                (
                    false,
                    vec![entry(
                        "Theorem 6",
                        "the modular image is not trivial, so the group is not free times cyclic",
                    )],
                )
            }
        }
    };
    Verdict {
        property,
        holds,
        trace,
        witness: None,
    }
}

fn verdict_torsion_free_solvable() -> Verdict {
    Verdict {
        property: Property::ResiduallyTorsionFreeSolvable,
        holds: true,
        trace: vec![entry(
            "Corollary 3",
            "every group presented by a labeled graph is residually torsion-free solvable",
        )],
        witness: None,
    }
}

/// The full report: shape, modular and radical data when defined, the
/// reduction trace, and all verdicts.
pub struct Report {
    pub analysis: Analysis,
    pub verdicts: Vec<Verdict>,
}

pub fn classify_all(g: &LabeledGraph, rho: Option<&PrimeSet>) -> Report {
    let analysis = analyze(g);
    let mut verdicts = vec![verdict_finite(&analysis)];
    if let Some(rho) = rho {
        verdicts.push(verdict_rho(&analysis, rho));
    }
    verdicts.push(verdict_nilpotent(&analysis));
    verdicts.push(verdict_free(
        &analysis,
        Property::ResiduallyTorsionFreeNilpotent,
    ));
    verdicts.push(verdict_free(&analysis, Property::ResiduallyFree));
    verdicts.push(verdict_torsion_free_solvable());
    Report { analysis, verdicts }
}

impl Report {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.property.name() == name)
    }
}

/// Convenience entry point used by tests and examples.
pub fn classify_text(input: &str, rho: Option<&PrimeSet>) -> Result<Report> {
    let g = LabeledGraph::parse(input)?;
    Ok(classify_all(&g, rho))
}
