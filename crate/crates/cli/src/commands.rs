use std::fmt::Write as _;
use std::path::Path;

use greechie::bell::bell_number;
use greechie::diagram::{to_dsl, OrthoDiagram};
use greechie::float::{format_f64, F17};
use greechie::polytope::{
    classical_max, enumerate_facets, hull_membership, nonnegative_form, HullMembership,
    LinearFunctional,
};
use greechie::quantum::{
    check_faithful, quantum_value, umbrella_representation, RepViolation, StateVector, VectorRep,
};
use greechie::states::{
    build_partition_logic, check_weight, enumerate_states_with, is_separating,
    partition_logic_bijection, true_implies_true, EnumerateOptions, PartitionLogic, RationalWeight,
    StateSet, WeightViolation,
};
use greechie::urn::{
    block_id, chsh_statistic, exact_chsh, induced_partition, run_experiment, urn_to_diagram,
    ChshVariant, Protocol, UrnModel, SETTING_PAIRS,
};
use greechie::{rational, Rational};
use serde::Serialize;
use serde_json::json;

use crate::input::{self, read_text, CliError};
use crate::{Cli, Command, SearchArgs};

fn states<'d>(d: &'d OrthoDiagram, s: &SearchArgs) -> Result<StateSet<'d>, CliError> {
    let opts = EnumerateOptions {
        max_nodes: s.max_nodes,
        parallel: s.parallel,
    };
    Ok(enumerate_states_with(d, &opts)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn bits(s: &greechie::states::TwoValuedState) -> String {
    s.to_string()
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::States {
            diagram,
            count_only,
            search,
        } => {
            let d = input::diagram(diagram)?;
            let s = states(&d, search)?;
            Ok(if *count_only {
                if json {
                    pretty(&json!({ "count": s.len() }))
                } else {
                    format!("{}\n", s.len())
                }
            } else if json {
                pretty(&json!({
                    "atoms": d.atoms(),
                    "count": s.len(),
                    "states": s.to_json_value(),
                }))
            } else {
                let mut out = format!("{} states over atoms {}\n", s.len(), d.atoms().join(" "));
                for st in s.states() {
                    writeln!(out, "{}", bits(st)).unwrap();
                }
                out
            })
        }
        Command::Partition {
            diagram,
            expect,
            search,
        } => {
            let d = input::diagram(diagram)?;
            let s = states(&d, search)?;
            let logic = build_partition_logic(&s)?;
            let mut matched = None;
            if let Some(path) = expect {
                let want = PartitionLogic::from_json(&read_text(path)?)?;
                match partition_logic_bijection(&logic, &want) {
                    Some(pi) => matched = Some(pi),
                    None => {
                        return Err(CliError {
                            kind: "mismatch",
                            message: format!(
                                "partition logic is not isomorphic to {}",
                                path.display()
                            ),
                            details: Some(logic.to_json_value()),
                        })
                    }
                }
            }
            if json {
                let mut v = logic.to_json_value();
                if let Some(pi) = matched {
                    v["isomorphism"] = json!(pi);
                }
                return Ok(pretty(&v));
            }
            let mut out = format!("ground set 1..{}\n", logic.ground_size);
            for (k, ctx) in logic.context_views(&d).iter().enumerate() {
                let blocks: Vec<String> = ctx.iter().map(fmt_set).collect();
                let names = d.context_names(k).join(" ");
                writeln!(out, "{names}: {}", blocks.join(" ")).unwrap();
            }
            if matched.is_some() {
                out.push_str("isomorphic to expected logic\n");
            }
            Ok(out)
        }
        Command::Bound {
            diagram,
            functional,
            rep,
            umbrella,
            state,
            tolerance,
            search,
        } => {
            let d = input::diagram(diagram)?;
            let f = LinearFunctional::from_json(&read_text(functional)?)?;
            let s = states(&d, search)?;
            let m = classical_max(&s, &f)?;
            let rep = match (rep, umbrella) {
                (Some(p), _) => Some(VectorRep::from_json(&read_text(p)?)?),
                (None, true) => Some(umbrella_representation(&d)?),
                (None, false) => None,
            };
            let quantum = match rep {
                Some(mut r) => {
                    if let Some(t) = tolerance {
                        r.tolerance = *t;
                    }
                    let c = state_vector(state.as_deref(), r.dimension, r.tolerance)?;
                    Some(quantum_value(&r, &c, &f)?)
                }
                None => None,
            };
            let classical = rational::to_f64(&m.value);
            if json {
                #[derive(Serialize)]
                struct Report {
                    classical_max: String,
                    argmax: Vec<usize>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    quantum_value: Option<F17>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    difference: Option<F17>,
                }
                return Ok(pretty(&Report {
                    classical_max: m.value.to_string(),
                    argmax: m.argmax,
                    quantum_value: quantum.map(F17),
                    difference: quantum.map(|q| F17(q - classical)),
                }));
            }
            let mut out = format!("classical: {}\n", m.value);
            if let Some(q) = quantum {
                writeln!(out, "quantum: {}", format_f64(q)).unwrap();
                writeln!(out, "difference: {}", format_f64(q - classical)).unwrap();
            }
            Ok(out)
        }
        Command::Validate { diagram } => {
            let d = input::diagram(diagram)?;
            Ok(if json {
                pretty(&json!({
                    "valid": true,
                    "atoms": d.num_atoms(),
                    "contexts": d.num_contexts(),
                }))
            } else {
                format!(
                    "valid: {} atoms, {} contexts\n",
                    d.num_atoms(),
                    d.num_contexts()
                )
            })
        }
        Command::Separable { diagram, search } => {
            let d = input::diagram(diagram)?;
            let s = states(&d, search)?;
            let sep = is_separating(&s);
            if json {
                return Ok(pretty(&sep));
            }
            Ok(match (&sep.witness, sep.separating) {
                (_, true) => "separating\n".to_string(),
                (Some((a, b)), false) => format!(
                    "not separating: atoms {a} and {b} agree on every state ({})\n",
                    sep.reason.as_deref().unwrap_or("")
                ),
                (None, false) => "not separating\n".to_string(),
            })
        }
        Command::Facets { diagram, search } => {
            let d = input::diagram(diagram)?;
            let s = states(&d, search)?;
            let desc = enumerate_facets(&s)?;
            if json {
                return Ok(pretty(&desc));
            }
            let mut out = format!(
                "dimension {}, {} equalities, {} facets\n",
                desc.dimension,
                desc.equalities.len(),
                desc.facets.len()
            );
            for e in &desc.equalities {
                writeln!(out, "{e}").unwrap();
            }
            for f in &desc.facets {
                writeln!(out, "{f}    # {}", nonnegative_form(&d, f)).unwrap();
            }
            Ok(out)
        }
        Command::Implies {
            diagram,
            atom,
            search,
        } => {
            let d = input::diagram(diagram)?;
            let s = states(&d, search)?;
            let implied = true_implies_true(&s, atom)?;
            if json {
                return Ok(pretty(&json!({ "atom": atom, "implied": implied })));
            }
            Ok(format!("{}: {}\n", implied.len(), implied.join(" ")))
        }
        Command::CheckWeight { diagram, weight } => {
            let d = input::diagram(diagram)?;
            let w = RationalWeight::parse(&read_text(weight)?)?;
            let c = check_weight(&d, &w);
            if json {
                return Ok(pretty(&c));
            }
            Ok(if c.admissible {
                "admissible\n".to_string()
            } else {
                let v: Vec<String> = c.violations.iter().map(fmt_weight_violation).collect();
                format!("not admissible: {}\n", v.join("; "))
            })
        }
        Command::HullMember {
            diagram,
            weight,
            search,
        } => {
            let d = input::diagram(diagram)?;
            let w = RationalWeight::parse(&read_text(weight)?)?;
            let s = states(&d, search)?;
            let h = hull_membership(&s, &w)?;
            if json {
                return Ok(pretty(&h));
            }
            Ok(match h {
                HullMembership::Inside { coefficients } => {
                    let terms: Vec<String> = coefficients
                        .iter()
                        .zip(s.states())
                        .filter(|(c, _)| **c != Rational::from_integer(0.into()))
                        .map(|(c, st)| format!("{c}*[{}]", bits(st)))
                        .collect();
                    format!("admissible, in hull: {}\n", terms.join(" + "))
                }
                HullMembership::Outside { inequality, value } => format!(
                    "admissible, NOT in hull, violated inequality: {inequality} (value {value})\n"
                ),
            })
        }
        Command::Umbrella { diagram } => {
            let d = match diagram {
                Some(p) => input::diagram(p)?,
                None => greechie::corpus::pentagon(),
            };
            Ok(format!(
                "{}\n",
                umbrella_representation(&d)?.to_json_string()
            ))
        }
        Command::CheckRep {
            diagram,
            rep,
            tolerance,
        } => {
            let d = input::diagram(diagram)?;
            let mut r = VectorRep::from_json(&read_text(rep)?)?;
            if let Some(t) = tolerance {
                r.tolerance = *t;
            }
            let report = check_faithful(&d, &r)?;
            if json {
                return Ok(pretty(&report));
            }
            if report.faithful {
                return Ok("faithful\n".to_string());
            }
            let mut out = format!("not faithful: {} violation(s)\n", report.violations.len());
            for v in &report.violations {
                writeln!(out, "{}", fmt_rep_violation(v)).unwrap();
            }
            Ok(out)
        }
        Command::UrnPartition { urn, color } => {
            let u = urn_model(urn)?;
            let colors: Vec<String> = match color {
                Some(c) => vec![c.clone()],
                None => u.colors.clone(),
            };
            let mut parts = serde_json::Map::new();
            let mut out = String::new();
            for c in &colors {
                let p = induced_partition(&u, c)?;
                let blocks: Vec<String> = p.iter().map(|b| block_id(b)).collect();
                writeln!(out, "{c}: {}", blocks.join(" ")).unwrap();
                parts.insert(c.clone(), json!(p));
            }
            if color.is_some() {
                return Ok(if json { pretty(&parts) } else { out });
            }
            let (d, w) = urn_to_diagram(&u)?;
            if json {
                return Ok(pretty(&json!({
                    "partitions": parts,
                    "diagram": d.to_json_value(),
                    "weight": w,
                })));
            }
            out.push_str("diagram:\n");
            out.push_str(&to_dsl(&d));
            out.push_str("weight:\n");
            for (a, v) in &w.values {
                writeln!(out, "{a} {v}").unwrap();
            }
            Ok(out)
        }
        Command::UrnRun { urn, exp } => {
            let u = urn_model(urn)?;
            let rec = run_experiment(&u, &protocol(&exp.protocol)?, exp.draws, exp.seed)?;
            #[derive(Serialize)]
            struct PairCount {
                alice: &'static str,
                bob: &'static str,
                count: usize,
            }
            #[derive(Serialize)]
            struct Summary {
                draws: usize,
                pairs: Vec<PairCount>,
                /// `null` unless every setting pair was drawn and all
                /// symbols are binary.
                s: Option<F17>,
            }
            let pairs = SETTING_PAIRS
                .iter()
                .map(|&(alice, bob)| PairCount {
                    alice,
                    bob,
                    count: rec
                        .draws
                        .iter()
                        .filter(|d| d.alice_color == alice && d.bob_color == bob)
                        .count(),
                })
                .collect();
            let summary = Summary {
                draws: rec.draws.len(),
                pairs,
                s: chsh_statistic(&rec, ChshVariant::default())
                    .ok()
                    .map(|r| r.s),
            };
            if json {
                #[derive(Serialize)]
                struct Run<'a> {
                    record: &'a greechie::urn::ExperimentRecord,
                    summary: &'a Summary,
                }
                return Ok(pretty(&Run {
                    record: &rec,
                    summary: &summary,
                }));
            }
            let summary = serde_json::to_string(&summary).unwrap();
            let mut out = String::new();
            for d in &rec.draws {
                writeln!(
                    out,
                    "{} {}={} {}={}",
                    d.ball_type, d.alice_color, d.alice_symbol, d.bob_color, d.bob_symbol
                )
                .unwrap();
            }
            writeln!(out, "summary: {summary}").unwrap();
            Ok(out)
        }
        Command::UrnChsh { urn, exp, variant } => {
            let u = urn_model(urn)?;
            let variant = ChshVariant::parse(variant)
                .ok_or_else(|| CliError::new("urn", format!("unknown variant `{variant}`")))?;
            let (exact, e) = exact_chsh(&u, variant)?;
            let rec = run_experiment(&u, &protocol(&exp.protocol)?, exp.draws, exp.seed)?;
            let report = chsh_statistic(&rec, variant)?;
            if json {
                #[derive(Serialize)]
                struct Exact {
                    s: String,
                    expectations: Vec<String>,
                }
                #[derive(Serialize)]
                struct Report {
                    exact: Exact,
                    sampled: greechie::urn::ChshReport,
                    seed: u64,
                }
                return Ok(pretty(&Report {
                    exact: Exact {
                        s: exact.to_string(),
                        expectations: e.iter().map(|x| x.to_string()).collect(),
                    },
                    sampled: report,
                    seed: exp.seed,
                }));
            }
            let mut out = format!("exact S: {exact}\n");
            writeln!(out, "sampled S: {}", format_f64(report.s.0)).unwrap();
            for p in &report.pairs {
                writeln!(
                    out,
                    "E({},{}) = {} over {} draws",
                    p.alice,
                    p.bob,
                    format_f64(p.expectation.0),
                    p.count
                )
                .unwrap();
            }
            Ok(out)
        }
        Command::Bell { n } => {
            let b = bell_number(*n)?;
            Ok(if json {
                pretty(&json!({ "n": n, "bell": b }))
            } else {
                format!("{b}\n")
            })
        }
    }
}

fn fmt_set(s: &std::collections::BTreeSet<usize>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn fmt_weight_violation(v: &WeightViolation) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn fmt_rep_violation(v: &RepViolation) -> String {
    match v {
        RepViolation::NotUnit { atom, norm } => format!("{atom}: norm {}", format_f64(norm.0)),
        RepViolation::NotOrthogonal {
            first,
            second,
            inner,
        } => format!(
            "{first} {second}: same context, inner product {}",
            format_f64(inner.0)
        ),
        RepViolation::UnexpectedOrthogonality {
            first,
            second,
            inner,
        } => format!(
            "{first} {second}: no common context, inner product {}",
            format_f64(inner.0)
        ),
    }
}

fn urn_model(path: &Path) -> Result<UrnModel, CliError> {
    Ok(UrnModel::from_json(&read_text(path)?)?)
}

fn protocol(text: &str) -> Result<Protocol, CliError> {
    match text {
        "uniform" => Ok(Protocol::SeededUniform),
        "round-robin" => Ok(Protocol::RoundRobin),
        other => {
            let pair = other
                .strip_prefix("fixed:")
                .and_then(|p| p.split_once(','))
                .ok_or_else(|| CliError::new("urn", format!("unknown protocol `{other}`")))?;
            Ok(Protocol::Fixed {
                alice: pair.0.trim().to_string(),
                bob: pair.1.trim().to_string(),
            })
        }
    }
}

fn state_vector(text: Option<&str>, dim: usize, tol: f64) -> Result<StateVector, CliError> {
    let comps: Vec<f64> = match text {
        None => {
            let mut v = vec![0.0; dim];
            v[0] = 1.0;
            v
        }
        Some(t) => t
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::new("quantum", format!("bad state vector: {e}")))?,
    };
    if comps.len() != dim {
        return Err(CliError::new(
            "quantum",
            format!(
                "state has {} components, representation has dimension {dim}",
                comps.len()
            ),
        ));
    }
    Ok(StateVector::new(comps, tol)?)
}
