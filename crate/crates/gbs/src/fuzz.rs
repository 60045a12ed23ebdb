//! The randomized invariant harness: generates seeded random graphs and
//! replays every cross-cutting invariant of the library on them, shrinking
//! the first counterexample it finds.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{additive_order, prime_support, PrimeSet};
use crate::classify::{self, GroupShape};
use crate::elliptic::{self, oracle_cycle_check, run_labeling, run_labeling_with_order};
use crate::graph::{spanning_tree, Component, EdgeId, End, LabeledGraph};
use crate::modular::ImageClass;
use crate::normalize::{make_t_positive, reduce, reduce_with_random_order};
use crate::radical::{build_sigma_51, build_sigma_62, compute_radical, verify_sigma};
use crate::random::{has_unit_modulus, random_graph, random_sign_changes};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: u64,
    /// Random vertex orders per graph in the labeling comparison.
    pub orders_per_graph: u32,
    /// Test hook: deliberately break a check to prove the harness notices.
    pub sabotage: Option<Sabotage>,
}

impl FuzzConfig {
    pub fn new(seed: u64, count: u64) -> Self {
        FuzzConfig {
            seed,
            count,
            orders_per_graph: 5,
            sabotage: None,
        }
    }
}

/// Deliberate defects for negative controls of the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sabotage {
    /// Behave as if the edge sign function were negated in the labeling.
    NegateXi,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub iteration: u64,
    pub check: String,
    pub detail: String,
    pub graph: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: u64,
    pub graphs_checked: u64,
    pub radical_eligible: u64,
    pub sigma51_verified: u64,
    pub sigma62_verified: u64,
    pub violation: Option<Violation>,
}

impl FuzzReport {
    pub fn clean(&self) -> bool {
        self.violation.is_none()
    }
}

fn iteration_seed(seed: u64, i: u64, salt: u64) -> u64 {
    (seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15)).wrapping_add(salt)
}

/// Runs `count` iterations and stops at the first violation, which is
/// shrunk before being reported. Identical configurations produce identical
/// reports.
pub fn run(config: &FuzzConfig) -> FuzzReport {
    let mut report = FuzzReport {
        seed: config.seed,
        count: config.count,
        graphs_checked: 0,
        radical_eligible: 0,
        sigma51_verified: 0,
        sigma62_verified: 0,
        violation: None,
    };
    for i in 0..config.count {
        let mut rng = ChaCha8Rng::seed_from_u64(iteration_seed(config.seed, i, 0));
        let g = random_graph(&mut rng);
        report.graphs_checked += 1;
        if eligible_for_radical(&g) {
            report.radical_eligible += 1;
        }
        if sigma51_subject(&g).is_some() {
            report.sigma51_verified += 1;
        }
        if sigma62_subject(&g).is_some() {
            report.sigma62_verified += 1;
        }
        let check_seed = iteration_seed(config.seed, i, 1);
        if let Some((check, detail)) = first_violation(&g, check_seed, config) {
            let minimized = shrink(&g, check_seed, config, &check);
            report.violation = Some(Violation {
                iteration: i,
                check: check.clone(),
                detail,
                graph: minimized.to_json_value(),
            });
            break;
        }
    }
    report
}

type CheckFn = fn(&LabeledGraph, u64, &FuzzConfig) -> Option<String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("labeling-oracle", check_labeling_oracle),
    ("order-independence", check_order_independence),
    ("prop-4.4", check_radical_invariants),
    ("sigma-5.1", check_sigma51),
    ("sigma-6.2", check_sigma62),
    ("metamorphic", check_metamorphic),
    ("constant-verdict", check_constant_verdict),
    ("monotone-chain", check_monotone_chain),
];

fn first_violation(
    g: &LabeledGraph,
    check_seed: u64,
    config: &FuzzConfig,
) -> Option<(String, String)> {
    for (name, check) in CHECKS {
        if let Some(detail) = check(g, check_seed, config) {
            return Some((name.to_string(), detail));
        }
    }
    None
}

fn run_named_check(
    g: &LabeledGraph,
    check_seed: u64,
    config: &FuzzConfig,
    name: &str,
) -> Option<String> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .and_then(|(_, check)| check(g, check_seed, config))
}

fn whole_graph_component(g: &LabeledGraph) -> Component {
    Component {
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|e| e.id.clone()).collect(),
    }
}

fn check_labeling_oracle(g: &LabeledGraph, _seed: u64, config: &FuzzConfig) -> Option<String> {
    let comp = whole_graph_component(g);
    let mut labeled = run_labeling(g, &comp).complete;
    if config.sabotage == Some(Sabotage::NegateXi) {
        labeled = !labeled;
    }
    let all: Vec<EdgeId> = comp.edges.clone();
    let oracle = oracle_cycle_check(g, g.vertices(), &all);
    (labeled != oracle).then(|| {
        format!("labeling complete = {labeled} but cycle oracle = {oracle}")
    })
}

fn check_order_independence(g: &LabeledGraph, seed: u64, config: &FuzzConfig) -> Option<String> {
    let comp = whole_graph_component(g);
    let baseline = run_labeling(g, &comp).complete;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    for k in 0..config.orders_per_graph {
        let outcome = run_labeling_with_order(g, &comp, &mut rng).complete;
        if outcome != baseline {
            return Some(format!(
                "random order {k} gave completeness {outcome}, deterministic order gave {baseline}"
            ));
        }
    }
    None
}

fn eligible_for_radical(g: &LabeledGraph) -> bool {
    !classify::detect_shape(g).is_elementary() && has_unit_modulus(g)
}

fn check_radical_invariants(g: &LabeledGraph, _seed: u64, _config: &FuzzConfig) -> Option<String> {
    if !eligible_for_radical(g) {
        return None;
    }
    let rad = match compute_radical(g) {
        Ok(rad) => rad,
        Err(e) => return Some(format!("radical computation failed: {e}")),
    };
    let product: BigInt = g
        .edges()
        .iter()
        .map(|e| e.label_from.abs() * e.label_to.abs())
        .product();
    if !(&product % &rad.mu).is_zero() {
        return Some(format!("mu = {} does not divide the label product {product}", rad.mu));
    }
    for e in g.edges() {
        let from_side = &rad.mu_v[&e.from] / e.label_from.abs();
        let to_side = &rad.mu_v[&e.to] / e.label_to.abs();
        if from_side != to_side || from_side != rad.k_e[&e.id] {
            return Some(format!("k_e mismatch at edge {}", e.id));
        }
    }
    let t = spanning_tree(g);
    let constant: Vec<_> = g
        .vertices()
        .iter()
        .map(|v| num_rational::BigRational::from(rad.mu_v[v].clone()) * &t.scale[v])
        .collect();
    if constant.windows(2).any(|w| w[0] != w[1]) {
        return Some("mu(v) * s(v) is not constant across vertices".into());
    }
    None
}

fn sigma51_subject(g: &LabeledGraph) -> Option<LabeledGraph> {
    if !eligible_for_radical(g) {
        return None;
    }
    let t = spanning_tree(g);
    Some(make_t_positive(g, &t))
}

fn check_sigma51(g: &LabeledGraph, _seed: u64, _config: &FuzzConfig) -> Option<String> {
    let positive = sigma51_subject(g)?;
    let rad = match compute_radical(&positive) {
        Ok(rad) => rad,
        Err(e) => return Some(format!("radical on positive form failed: {e}")),
    };
    let sigma = match build_sigma_51(&positive, &rad) {
        Ok(s) => s,
        Err(e) => return Some(format!("split-extension homomorphism failed: {e}")),
    };
    let (ok, checks) = verify_sigma(&positive, &sigma);
    if !ok {
        let bad = checks.last().expect("at least one check");
        return Some(format!(
            "relation at edge {} maps to {} != {}",
            bad.edge, bad.lhs, bad.rhs
        ));
    }
    None
}

fn sigma62_subject(g: &LabeledGraph) -> Option<(LabeledGraph, BigInt)> {
    let (rg, _) = reduce(g);
    let shape = classify::detect_shape_reduced(rg.clone());
    if !matches!(shape, GroupShape::NonSolvable(_)) {
        return None;
    }
    let t = spanning_tree(&rg);
    let image = crate::modular::modular_image(&rg, &t).ok()?;
    if image.class != ImageClass::PlusMinusOne {
        return None;
    }
    let mut support = std::collections::BTreeSet::new();
    for e in rg.edges() {
        for end in [End::Plus, End::Minus] {
            support.extend(prime_support(e.label(end)).expect("non-zero"));
        }
    }
    if support.len() != 1 {
        return None;
    }
    let p = support.into_iter().next().expect("one prime");
    if p == BigInt::from(2) {
        return None;
    }
    Some((rg, p))
}

fn check_sigma62(g: &LabeledGraph, _seed: u64, _config: &FuzzConfig) -> Option<String> {
    let (rg, _p) = sigma62_subject(g)?;
    let t = spanning_tree(&rg);
    let positive = make_t_positive(&rg, &t);
    let rad = match compute_radical(&positive) {
        Ok(rad) => rad,
        Err(e) => return Some(format!("radical failed: {e}")),
    };
    let report = match elliptic::check_condition(&positive, &rad) {
        Ok(r) => r,
        Err(e) => return Some(format!("condition check failed: {e}")),
    };
    let Some(zeta) = report.total_zeta() else {
        return None; // condition fails: nothing to build
    };
    let sigma = match build_sigma_62(&positive, &rad, &zeta) {
        Ok(s) => s,
        Err(e) => return Some(format!("cyclic homomorphism failed: {e}")),
    };
    let (ok, checks) = verify_sigma(&positive, &sigma);
    if !ok {
        let bad = checks.last().expect("at least one check");
        return Some(format!(
            "relation at edge {} fails mod {}: {} vs {}",
            bad.edge, rad.mu, bad.lhs, bad.rhs
        ));
    }
    for (v, image) in &sigma.vertex_images {
        if additive_order(image, &rad.mu) != rad.mu_v[v] {
            return Some(format!("image of {v} has wrong additive order"));
        }
    }
    None
}

/// Booleans that must be invariant under group-preserving rewriting.
#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    finite: bool,
    rho2: bool,
    rho3: bool,
    nilpotent: bool,
    free: bool,
    image: Option<&'static str>,
    mu: Option<BigInt>,
}

fn fingerprint(g: &LabeledGraph) -> Fingerprint {
    let rho2 = PrimeSet::explicit(vec![BigInt::from(2)]).expect("prime");
    let rho3 = PrimeSet::explicit(vec![BigInt::from(3)]).expect("prime");
    let analysis = classify::analyze(g);
    Fingerprint {
        finite: classify::verdict_finite(&analysis).holds,
        rho2: classify::verdict_rho(&analysis, &rho2).holds,
        rho3: classify::verdict_rho(&analysis, &rho3).holds,
        nilpotent: classify::verdict_nilpotent(&analysis).holds,
        free: classify::verdict_free(&analysis, classify::Property::ResiduallyFree).holds,
        image: analysis.modular.as_ref().map(|m| match m.class {
            ImageClass::Trivial => "trivial",
            ImageClass::PlusMinusOne => "plus-minus-one",
            ImageClass::Other(_) => "other",
        }),
        mu: analysis.radical.as_ref().map(|r| r.mu.clone()),
    }
}

fn check_metamorphic(g: &LabeledGraph, seed: u64, _config: &FuzzConfig) -> Option<String> {
    let baseline = fingerprint(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5A5A);
    let (collapsed, _) = reduce_with_random_order(g, &mut rng);
    let variant = fingerprint(&collapsed);
    if variant != baseline {
        return Some(format!(
            "random collapse order changed the fingerprint: {baseline:?} -> {variant:?}"
        ));
    }
    let flipped = random_sign_changes(g, &mut rng, 10);
    let variant = fingerprint(&flipped);
    if variant != baseline {
        return Some(format!(
            "sign changes changed the fingerprint: {baseline:?} -> {variant:?}"
        ));
    }
    None
}

fn check_constant_verdict(g: &LabeledGraph, _seed: u64, _config: &FuzzConfig) -> Option<String> {
    let report = classify::classify_all(g, None);
    let tfs = report
        .verdict("ResiduallyTorsionFreeSolvable")
        .expect("always present");
    (!tfs.holds).then(|| "torsion-free solvable verdict must be constant true".into())
}

fn check_monotone_chain(g: &LabeledGraph, _seed: u64, _config: &FuzzConfig) -> Option<String> {
    let report = classify::classify_all(g, None);
    let get = |name: &str| report.verdict(name).expect("present").holds;
    let free = get("ResiduallyFree");
    let tfn = get("ResiduallyTorsionFreeNilpotent");
    let nilpotent = get("ResiduallyNilpotent");
    let finite = get("ResiduallyFinite");
    if free != tfn {
        return Some("residually free and residually torsion-free nilpotent differ".into());
    }
    if tfn && !nilpotent {
        return Some("torsion-free nilpotent without nilpotent".into());
    }
    if nilpotent && !finite {
        return Some("nilpotent without finite".into());
    }
    None
}

/// Shrinks a failing graph: drop edges (and the vertices they strand), then
/// divide label magnitudes by their primes, keeping the violation alive at
/// every step.
fn shrink(
    g: &LabeledGraph,
    check_seed: u64,
    config: &FuzzConfig,
    check: &str,
) -> LabeledGraph {
    let still_fails = |candidate: &LabeledGraph| -> bool {
        run_named_check(candidate, check_seed, config, check).is_some()
    };
    let mut current = g.clone();
    loop {
        let mut progressed = false;
        // edge removal, dropping stranded vertices
        for idx in 0..current.edges().len() {
            let mut edges = current.edges().to_vec();
            edges.remove(idx);
            let vertices: Vec<_> = if edges.is_empty() {
                vec![current.vertices()[0].clone()]
            } else {
                current
                    .vertices()
                    .iter()
                    .filter(|v| edges.iter().any(|e| e.end_at(v).is_some()))
                    .cloned()
                    .collect()
            };
            if let Ok(candidate) = LabeledGraph::new(vertices, edges) {
                if still_fails(&candidate) {
                    current = candidate;
                    progressed = true;
                    break;
                }
            }
        }
        if progressed {
            continue;
        }
        // label division
        'divide: for idx in 0..current.edges().len() {
            for end in [End::Plus, End::Minus] {
                let label = current.edges()[idx].label(end).clone();
                for p in prime_support(&label).expect("non-zero") {
                    let mut edges = current.edges().to_vec();
                    *edges[idx].label_mut(end) = &label / &p;
                    if let Ok(candidate) = LabeledGraph::new(current.vertices().to_vec(), edges) {
                        if still_fails(&candidate) {
                            current = candidate;
                            progressed = true;
                            break 'divide;
                        }
                    }
                }
            }
        }
        if !progressed {
            return current;
        }
    }
}
