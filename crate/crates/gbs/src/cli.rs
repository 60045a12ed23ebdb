//! Command-line front end: parsing, normalization, classification, and the
//! randomized invariant harness, with JSON-first output.
//!
//! Exit codes: 0 on success, 1 when the harness finds a violation, 2 on
//! invalid input or usage. Errors are printed as one JSON object.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::PrimeSet;
use crate::classify::{classify_all, Property, Report, Verdict, Witness};
use crate::dot::{emit_dot, DotAnnotations};
use crate::elliptic::{check_condition, FailureCause};
use crate::error::{Error, Result};
use crate::fuzz::{self, FuzzConfig};
use crate::graph::{bigint_to_number, spanning_tree, LabeledGraph};
use crate::modular::{delta_generators, classify_modular_image, modular_subring, ImageClass};
use crate::normalize::{reduce, ReductionTrace};
use crate::radical::compute_radical;

#[derive(Parser)]
#[command(name = "gbs", version, about = "Classify groups presented by labeled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the residual properties of the presented group
    Classify {
        /// Input file, or - for stdin
        input: String,
        /// Prime set: "all" or a comma-separated list such as "2,3,7"
        #[arg(long)]
        rho: Option<String>,
        /// Include the statement-by-statement explanation in text output
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Collapse the graph to its reduced form
    Reduce {
        input: String,
        /// Also print the collapse steps
        #[arg(long)]
        emit_trace: bool,
    },
    /// Print the modular generators, image class, and generated subring
    Modular { input: String },
    /// Print the radical indices mu(v), mu, and k_e
    Radical { input: String },
    /// Run the sign-labeling check over the k_e > 1 subgraph
    CheckElliptic { input: String },
    /// Generate random graphs and replay every invariant on them
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems exit with 2
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok((output, code)) => {
            println!("{output}");
            code
        }
        Err(e) => {
            let obj = json!({ "error": e.code(), "detail": e.to_string() });
            println!("{obj}");
            2
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::MalformedInput(e.to_string()))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{path}: {e}")))
    }
}

fn parse_rho(spec: &str) -> Result<PrimeSet> {
    if spec == "all" {
        return Ok(PrimeSet::AllPrimes);
    }
    let primes = spec
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::MalformedInput(format!("bad prime {part:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PrimeSet::explicit(primes)
}

fn dispatch(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Classify {
            input,
            rho,
            explain,
            format,
        } => {
            let g = LabeledGraph::parse(&read_input(&input)?)?;
            let rho = rho.as_deref().map(parse_rho).transpose()?;
            let report = classify_all(&g, rho.as_ref());
            let output = match format {
                Format::Json => serde_json::to_string_pretty(&report_json(&report))
                    .expect("report serializes"),
                Format::Text => report_text(&report, explain),
                Format::Dot => report_dot(&report),
            };
            Ok((output, 0))
        }
        Command::Reduce { input, emit_trace } => {
            let g = LabeledGraph::parse(&read_input(&input)?)?;
            let (reduced, trace) = reduce(&g);
            let output = if emit_trace {
                serde_json::to_string_pretty(&json!({
                    "graph": reduced.to_json_value(),
                    "trace": trace_json(&trace),
                }))
                .expect("serializes")
            } else {
                reduced.to_json()
            };
            Ok((output, 0))
        }
        Command::Modular { input } => {
            let g = LabeledGraph::parse(&read_input(&input)?)?;
            let t = spanning_tree(&g);
            let generators = delta_generators(&g, &t)?;
            let image = classify_modular_image(&generators);
            let subring = modular_subring(&generators);
            let obj = json!({
                "generators": generators
                    .iter()
                    .map(|(e, q)| json!({ "edge": e.to_string(), "value": q.to_string() }))
                    .collect::<Vec<_>>(),
                "class": image_class_name(&image.class),
                "witness": match &image.class {
                    ImageClass::Other(q) => Value::String(q.to_string()),
                    _ => Value::Null,
                },
                "subring_inverted_primes": subring
                    .inverted_primes
                    .iter()
                    .map(|p| Value::Number(bigint_to_number(p)))
                    .collect::<Vec<_>>(),
            });
            Ok((serde_json::to_string_pretty(&obj).expect("serializes"), 0))
        }
        Command::Radical { input } => {
            let g = LabeledGraph::parse(&read_input(&input)?)?;
            let rad = compute_radical(&g)?;
            Ok((
                serde_json::to_string_pretty(&radical_json(&rad)).expect("serializes"),
                0,
            ))
        }
        Command::CheckElliptic { input } => {
            let g = LabeledGraph::parse(&read_input(&input)?)?;
            let rad = compute_radical(&g)?;
            let report = check_condition(&g, &rad)?;
            let components: Vec<Value> = report
                .components
                .iter()
                .map(|(comp, z)| {
                    json!({
                        "vertices": comp.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "zeta": if z.complete {
                            Value::Object(
                                z.zeta
                                    .iter()
                                    .map(|(v, s)| (v.to_string(), json!(s)))
                                    .collect(),
                            )
                        } else {
                            Value::Null
                        },
                        "failure": z.failure.as_ref().map_or(Value::Null, |f| {
                            json!({
                                "vertex": f.vertex.to_string(),
                                "cause": match &f.cause {
                                    FailureCause::NegativeLoop(e) => json!({
                                        "type": "NegativeLoop",
                                        "edge": e.to_string(),
                                    }),
                                    FailureCause::Conflict(a, b) => json!({
                                        "type": "Conflict",
                                        "edges": [a.to_string(), b.to_string()],
                                    }),
                                },
                            })
                        }),
                    })
                })
                .collect();
            let obj = json!({
                "e_prime": report.e_prime.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "components": components,
                "holds": report.holds,
            });
            Ok((serde_json::to_string_pretty(&obj).expect("serializes"), 0))
        }
        Command::Fuzz { seed, count, json } => {
            if count == 0 {
                return Err(Error::MalformedInput("count must be at least 1".into()));
            }
            let report = fuzz::run(&FuzzConfig::new(seed, count));
            let code = if report.clean() { 0 } else { 1 };
            let output = if json {
                serde_json::to_string_pretty(&report).expect("serializes")
            } else if let Some(v) = &report.violation {
                format!(
                    "violation at iteration {} in check {}: {}\nminimized graph: {}",
                    v.iteration, v.check, v.detail, v.graph
                )
            } else {
                format!(
                    "checked {} graphs (radical-eligible {}, sigma checks {}/{}): all invariants hold",
                    report.graphs_checked,
                    report.radical_eligible,
                    report.sigma51_verified,
                    report.sigma62_verified
                )
            };
            Ok((output, code))
        }
    }
}

fn image_class_name(class: &ImageClass) -> &'static str {
    match class {
        ImageClass::Trivial => "Trivial",
        ImageClass::PlusMinusOne => "PlusMinusOne",
        ImageClass::Other(_) => "Other",
    }
}

fn trace_json(trace: &ReductionTrace) -> Vec<Value> {
    trace
        .iter()
        .map(|s| {
            json!({
                "edge": s.edge.to_string(),
                "absorbed": s.absorbed.to_string(),
                "multiplier": Value::Number(bigint_to_number(&s.multiplier)),
            })
        })
        .collect()
}

fn witness_json(witness: &Witness) -> Value {
    match witness {
        Witness::Prime(p) => json!({ "type": "Prime", "p": Value::Number(bigint_to_number(p)) }),
        Witness::ModularValue(q) => json!({ "type": "ModularValue", "value": q.to_string() }),
        Witness::Edge(e) => json!({ "type": "Edge", "edge": e.to_string() }),
        Witness::NegativeLoop { vertex, edge } => json!({
            "type": "NegativeLoop",
            "vertex": vertex.to_string(),
            "edge": edge.to_string(),
        }),
        Witness::Conflict { vertex, edges } => json!({
            "type": "Conflict",
            "vertex": vertex.to_string(),
            "edges": [edges.0.to_string(), edges.1.to_string()],
        }),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("property".into(), json!(v.property.name()));
    if let Property::ResiduallyRho(rho) = &v.property {
        obj.insert("rho".into(), json!(rho.to_string()));
    }
    obj.insert("holds".into(), json!(v.holds));
    obj.insert(
        "trace".into(),
        Value::Array(
            v.trace
                .iter()
                .map(|t| json!({ "statement": t.statement, "reason": t.reason }))
                .collect(),
        ),
    );
    obj.insert(
        "witness".into(),
        v.witness.as_ref().map_or(Value::Null, witness_json),
    );
    Value::Object(obj)
}

fn radical_json(rad: &crate::radical::RadicalData) -> Value {
    json!({
        "mu_v": rad
            .mu_v
            .iter()
            .map(|(v, m)| (v.to_string(), Value::Number(bigint_to_number(m))))
            .collect::<serde_json::Map<_, _>>(),
        "mu": Value::Number(bigint_to_number(&rad.mu)),
        "k_e": rad
            .k_e
            .iter()
            .map(|(e, k)| (e.to_string(), Value::Number(bigint_to_number(k))))
            .collect::<serde_json::Map<_, _>>(),
        "M": rad.intersection_scale.to_string(),
        "cyclic_radical": rad.cyclic_radical,
    })
}

/// The JSON reportbundle of a classification run.
pub fn report_json(report: &Report) -> Value {
    let a = &report.analysis;
    let shape = match &a.shape {
        crate::classify::GroupShape::Bs1n(n) => json!({
            "type": "BS1n",
            "n": Value::Number(bigint_to_number(n)),
        }),
        other => json!({ "type": other.name() }),
    };
    let modular = a.modular.as_ref().map_or(Value::Null, |m| {
        json!({
            "class": image_class_name(&m.class),
            "witness": match &m.class {
                ImageClass::Other(q) => Value::String(q.to_string()),
                _ => Value::Null,
            },
            "generators": m
                .generators
                .iter()
                .map(|(e, q)| json!({ "edge": e.to_string(), "value": q.to_string() }))
                .collect::<Vec<_>>(),
        })
    });
    let radical = a.radical.as_ref().map_or(Value::Null, radical_json);
    json!({
        "shape": shape,
        "modular_image": modular,
        "radical": radical,
        "reduced": a.reduced.to_json_value(),
        "reduction_trace": trace_json(&a.reduction_trace),
        "verdicts": report.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
    })
}

fn report_text(report: &Report, explain: bool) -> String {
    let a = &report.analysis;
    let mut out = String::new();
    out.push_str(&format!("shape: {}\n", a.shape.name()));
    if let crate::classify::GroupShape::Bs1n(n) = &a.shape {
        out.push_str(&format!("  n = {n}\n"));
    }
    match &a.modular {
        None => out.push_str("modular image: not defined (elementary)\n"),
        Some(m) => match &m.class {
            ImageClass::Trivial => out.push_str("modular image: {1}\n"),
            ImageClass::PlusMinusOne => out.push_str("modular image: {1,-1}\n"),
            ImageClass::Other(q) => {
                out.push_str(&format!("modular image: larger than {{1,-1}} (witness {q})\n"))
            }
        },
    }
    if let Some(rad) = &a.radical {
        out.push_str(&format!("mu: {}\n", rad.mu));
    }
    for v in &report.verdicts {
        let label = match &v.property {
            Property::ResiduallyRho(rho) => format!("residually rho ({rho})"),
            Property::ResiduallyFinite => "residually finite".into(),
            Property::ResiduallyNilpotent => "residually nilpotent".into(),
            Property::ResiduallyTorsionFreeNilpotent => {
                "residually torsion-free nilpotent".into()
            }
            Property::ResiduallyFree => "residually free".into(),
            Property::ResiduallyTorsionFreeSolvable => {
                "residually torsion-free solvable".into()
            }
        };
        out.push_str(&format!("{label}: {}\n", v.holds));
        if explain {
            for t in &v.trace {
                out.push_str(&format!("    [{}] {}\n", t.statement, t.reason));
            }
            if let Some(w) = &v.witness {
                out.push_str(&format!("    witness: {}\n", witness_json(w)));
            }
        }
    }
    out.trim_end().to_string()
}

fn report_dot(report: &Report) -> String {
    let a = &report.analysis;
    let zeta = a.condition.as_ref().and_then(|c| c.total_zeta()).map(|z| {
        z.into_iter().collect::<BTreeMap<_, _>>()
    });
    let ann = DotAnnotations {
        mu_v: a.radical.as_ref().map(|r| r.mu_v.clone()),
        zeta,
    };
    emit_dot(&a.reduced, &ann)
}
