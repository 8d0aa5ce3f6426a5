use std::collections::{BTreeMap, BTreeSet};

use super::family::graph_family;
use super::oracle::{
    is_prime, oracle_expand, oracle_is_ap, oracle_maximal_class, oracle_set_sum,
    oracle_set_sum_cardinality, oracle_sumset_cardinality,
};
use super::{
    enumerate_ap_pairs, AuditReport, AuditVerdict, Claim, Counterexample, Evidence,
    ReadingAgreement, SearchBounds,
};
use crate::constructors::{construct_first_kind, ConstructionParams};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graphcore::{is_bipartite, subgraph, Edge, Graph};
use crate::labeling::{
    classify, edge_kind, gcd, transport_labeling, EdgeRelation, SetLabeling, Transform,
};
use crate::setcore::{maximal_class_size, recognize_ap, sumset, ApDescriptor, IntegerSet};

pub fn audit(claim: Claim, bounds: &SearchBounds) -> Result<AuditReport> {
    audit_with(claim, bounds, Execution::default())
}

pub fn audit_with(claim: Claim, bounds: &SearchBounds, exec: Execution) -> Result<AuditReport> {
    bounds.validate()?;
    match claim {
        Claim::ArithmeticCharacterization
        | Claim::FirstKindStrong
        | Claim::FirstKindTrivialClasses
        | Claim::FirstKindNoPrimeIndex
        | Claim::SecondKindStrong
        | Claim::MaximalClassFormula
        | Claim::Reduction => pair_audit(claim, bounds, exec),
        Claim::UniformFirstKind
        | Claim::Subgraph
        | Claim::LineGraph
        | Claim::TotalGraph
        | Claim::Contraction
        | Claim::Subdivision => graph_audit(claim, bounds, exec),
    }
}

/// Outcome of evaluating one in-scope instance.
#[derive(Default)]
struct Checked {
    instances: u64,
    counterexamples: Vec<Counterexample>,
    reading_hits: Vec<u64>,
}

fn assemble(
    claim: Claim,
    bounds: &SearchBounds,
    outcomes: Vec<Result<Checked>>,
    readings: &[Reading],
) -> Result<AuditReport> {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    let mut hits = vec![0u64; readings.len()];
    for outcome in outcomes {
        let outcome = outcome?;
        checked += outcome.instances;
        counterexamples.extend(outcome.counterexamples);
        for (total, h) in hits.iter_mut().zip(&outcome.reading_hits) {
            *total += h;
        }
    }
    let readings = readings
        .iter()
        .zip(hits)
        .map(|(r, agreed)| ReadingAgreement {
            reading: r.name.to_string(),
            description: r.description.to_string(),
            agreed,
            checked,
        })
        .collect();
    let verdict = if counterexamples.is_empty() {
        AuditVerdict::Consistent
    } else {
        AuditVerdict::CounterexamplesFound
    };
    Ok(AuditReport {
        theorem: claim,
        bounds: *bounds,
        checked,
        counterexamples,
        verdict,
        readings,
    })
}

fn disagreement(what: &str, p: &ApDescriptor, q: &ApDescriptor) -> Error {
    Error::Internal(format!(
        "fast path and oracle disagree on {what} for {p} + {q}"
    ))
}

/// `(v_i, v_j)`: the smaller-difference descriptor first.
fn roles<'a>(p: &'a ApDescriptor, q: &'a ApDescriptor) -> (&'a ApDescriptor, &'a ApDescriptor) {
    if p.difference <= q.difference {
        (p, q)
    } else {
        (q, p)
    }
}

fn fast_cardinality(p: &ApDescriptor, q: &ApDescriptor) -> Result<u64> {
    Ok(sumset(&p.expand(), &q.expand())?.len() as u64)
}

/// `|f(v_j)| = q * |f(v_i)| + r` for a second-kind pair; `None` when `r = 0`.
fn quotient_remainder(vi: &ApDescriptor, vj: &ApDescriptor) -> Option<(u64, u64)> {
    let (q, r) = (vj.length / vi.length, vj.length % vi.length);
    (r > 0).then_some((q, r))
}

struct Reading {
    name: &'static str,
    description: &'static str,
    /// `q1` from `(d_i, d_j, |f(v_j)|, r)`.
    q1: fn(u64, u64, u64, u64) -> u64,
}

const MAXIMAL_CLASS_READINGS: [Reading; 3] = [
    Reading {
        name: "cardinality-remainder",
        description: "q1 least positive with q1*|f(v_j)| divisible by r",
        q1: |_, _, n, r| r / gcd(n, r),
    },
    Reading {
        name: "difference-remainder",
        description: "q1 least positive with q1*d_i divisible by r",
        q1: |di, _, _, r| r / gcd(di, r),
    },
    Reading {
        name: "difference-ratio",
        description: "q1 least positive with q1*d_i divisible by d_j",
        q1: |di, dj, _, _| dj / gcd(di, dj),
    },
];

/// Predicted maximal class size `floor(|f(v_j)| / q1)`, at least 1.
fn predicted_class_size(n: u64, q1: u64) -> u64 {
    (n / q1).max(1)
}

fn pair_audit(claim: Claim, bounds: &SearchBounds, exec: Execution) -> Result<AuditReport> {
    let pairs: Vec<(ApDescriptor, ApDescriptor)> = enumerate_ap_pairs(bounds).collect();
    let outcomes = exec.map(&pairs, |(p, q)| evaluate_pair(claim, p, q));
    let readings: &[Reading] = if claim == Claim::MaximalClassFormula {
        &MAXIMAL_CLASS_READINGS
    } else {
        &[]
    };
    assemble(claim, bounds, outcomes, readings)
}

fn counterexample(
    p: &ApDescriptor,
    q: &ApDescriptor,
    expected: Evidence,
    observed: Evidence,
) -> Counterexample {
    Counterexample {
        p: Some(*p),
        q: Some(*q),
        instance: None,
        expected,
        observed,
    }
}

fn evaluate_pair(claim: Claim, p: &ApDescriptor, q: &ApDescriptor) -> Result<Checked> {
    let kind = edge_kind(p, q)?;
    let (vi, vj) = roles(p, q);
    let (m, n) = (vi.length, vj.length);
    let mut out = Checked::default();
    let first_kind = kind.relation == EdgeRelation::FirstKind;

    match claim {
        Claim::ArithmeticCharacterization => {
            out.instances = 1;
            let predicted = matches!(
                kind.relation,
                EdgeRelation::EqualDifference | EdgeRelation::ArithmeticMultiple
            );
            let label = sumset(&p.expand(), &q.expand())?;
            let observed = recognize_ap(&label);
            let observed_diff = observed.map(|d| d.difference);
            let expected_diff = predicted.then_some(kind.d_small);
            if observed.is_some() != predicted || observed_diff != expected_diff {
                let sums = oracle_set_sum(&oracle_expand(p), &oracle_expand(q));
                if oracle_is_ap(&sums) != observed.is_some() {
                    return Err(disagreement("AP recognition", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        is_ap: Some(predicted),
                        ap_difference: expected_diff,
                        ..Evidence::default()
                    },
                    Evidence {
                        is_ap: Some(observed.is_some()),
                        ap_difference: observed_diff,
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::FirstKindStrong if first_kind => {
            out.instances = 1;
            let card = fast_cardinality(p, q)?;
            if card != m * n {
                if oracle_sumset_cardinality(p, q) != card {
                    return Err(disagreement("sumset cardinality", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        sumset_cardinality: Some(m * n),
                        strong: Some(true),
                        ..Evidence::default()
                    },
                    Evidence {
                        sumset_cardinality: Some(card),
                        strong: Some(false),
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::FirstKindTrivialClasses if first_kind => {
            out.instances = 1;
            let size = maximal_class_size(&p.expand(), &q.expand()) as u64;
            if size != 1 {
                if oracle_maximal_class(p, q).0 != size {
                    return Err(disagreement("maximal class size", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        max_class_size: Some(1),
                        ..Evidence::default()
                    },
                    Evidence {
                        max_class_size: Some(size),
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::FirstKindNoPrimeIndex if first_kind => {
            out.instances = 1;
            let card = fast_cardinality(p, q)?;
            let composite = card > 1 && !is_prime(card);
            if !composite {
                if oracle_sumset_cardinality(p, q) != card {
                    return Err(disagreement("sumset cardinality", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        composite: Some(true),
                        ..Evidence::default()
                    },
                    Evidence {
                        sumset_cardinality: Some(card),
                        composite: Some(false),
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::SecondKindStrong if kind.relation.is_second_kind() => {
            let Some((quotient, _)) = quotient_remainder(vi, vj) else {
                return Ok(out);
            };
            out.instances = 1;
            let predicted = quotient > m || gcd(vi.difference, vj.difference) == 1;
            let card = fast_cardinality(p, q)?;
            let observed = card == m * n;
            if observed != predicted {
                if oracle_sumset_cardinality(p, q) != card {
                    return Err(disagreement("sumset cardinality", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        strong: Some(predicted),
                        ..Evidence::default()
                    },
                    Evidence {
                        strong: Some(observed),
                        sumset_cardinality: Some(card),
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::MaximalClassFormula if kind.relation.is_second_kind() => {
            let Some((_, r)) = quotient_remainder(vi, vj) else {
                return Ok(out);
            };
            out.instances = 1;
            let size = maximal_class_size(&p.expand(), &q.expand()) as u64;
            if oracle_maximal_class(p, q).0 != size {
                return Err(disagreement("maximal class size", p, q));
            }
            let predictions: BTreeMap<String, u64> = MAXIMAL_CLASS_READINGS
                .iter()
                .map(|rd| {
                    let q1 = (rd.q1)(vi.difference, vj.difference, n, r);
                    (rd.name.to_string(), predicted_class_size(n, q1))
                })
                .collect();
            out.reading_hits = MAXIMAL_CLASS_READINGS
                .iter()
                .map(|rd| u64::from(predictions[rd.name] == size))
                .collect();
            if out.reading_hits.iter().all(|&h| h == 0) {
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        by_reading: Some(predictions),
                        ..Evidence::default()
                    },
                    Evidence {
                        max_class_size: Some(size),
                        ..Evidence::default()
                    },
                ));
            }
        }
        Claim::Reduction => {
            out.instances = 1;
            let predicted = first_kind;
            let label = sumset(&p.expand(), &q.expand())?;
            let observed = recognize_ap(&label).is_none();
            if observed != predicted {
                let sums = oracle_set_sum(&oracle_expand(p), &oracle_expand(q));
                if oracle_is_ap(&sums) == observed {
                    return Err(disagreement("AP recognition", p, q));
                }
                out.counterexamples.push(counterexample(
                    p,
                    q,
                    Evidence {
                        semi_arithmetic: Some(predicted),
                        ..Evidence::default()
                    },
                    Evidence {
                        semi_arithmetic: Some(observed),
                        is_ap: Some(!observed),
                        ..Evidence::default()
                    },
                ));
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Parameter grid for graph audits: sizes from the two length bounds and
/// base differences `1` and `diff_max`.
fn parameter_grid(bounds: &SearchBounds) -> Vec<ConstructionParams> {
    let sizes: BTreeSet<u64> = [bounds.len_min, bounds.len_max].into();
    let diffs: BTreeSet<u64> = [1, bounds.diff_max].into();
    let mut grid = Vec::new();
    for &m in &sizes {
        for &n in &sizes {
            for &d in &diffs {
                grid.push(ConstructionParams { m, n, d, k: None });
            }
        }
    }
    grid
}

fn describe(name: &str, p: &ConstructionParams) -> String {
    format!("{name} m={} n={} d={} k={}", p.m, p.n, p.d, p.multiplier())
}

fn graph_counterexample(
    instance: String,
    expected: Evidence,
    observed: Evidence,
) -> Counterexample {
    Counterexample {
        p: None,
        q: None,
        instance: Some(instance),
        expected,
        observed,
    }
}

fn graph_audit(claim: Claim, bounds: &SearchBounds, exec: Execution) -> Result<AuditReport> {
    let family = graph_family();
    let grid = parameter_grid(bounds);
    let instances: Vec<(&str, &Graph, ConstructionParams)> = family
        .iter()
        .flat_map(|(name, g)| grid.iter().map(move |p| (name.as_str(), g, *p)))
        .collect();
    let outcomes = exec.map(&instances, |(name, g, p)| match claim {
        Claim::UniformFirstKind => evaluate_uniformity(name, g, p),
        _ => evaluate_transforms(claim, name, g, p),
    });
    assemble(claim, bounds, outcomes, &[])
}

/// Whether the vertices split by label size into two independent sets.
fn bipartition_by_size(g: &Graph, f: &SetLabeling, m: usize) -> bool {
    let side = |v: &str| f.get(v).map(IntegerSet::len) == Some(m);
    g.edges().all(|e| side(e.u()) != side(e.v()))
}

fn evaluate_uniformity(name: &str, g: &Graph, p: &ConstructionParams) -> Result<Checked> {
    let mut out = Checked {
        instances: 1,
        ..Checked::default()
    };
    let instance = describe(name, p);
    let expected_constructible = is_bipartite(g).is_some() || p.m == p.n;
    let f = match construct_first_kind(g, p) {
        Ok(f) => f,
        Err(Error::ConstructionImpossible(_)) => {
            if expected_constructible {
                out.counterexamples.push(graph_counterexample(
                    instance,
                    Evidence {
                        constructible: Some(true),
                        ..Evidence::default()
                    },
                    Evidence {
                        constructible: Some(false),
                        ..Evidence::default()
                    },
                ));
            }
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    if !expected_constructible {
        out.counterexamples.push(graph_counterexample(
            instance,
            Evidence {
                constructible: Some(false),
                ..Evidence::default()
            },
            Evidence {
                constructible: Some(true),
                ..Evidence::default()
            },
        ));
        return Ok(out);
    }

    let report = classify(g, &f)?;
    let expected_k = p.m * p.n;
    let observed_k = report.edge_uniform_k.map(|k| k as u64);
    // oracle recount of every edge label
    let oracle_sizes: BTreeSet<u64> = g
        .edges()
        .map(|e| {
            let (a, b) = (f.get(e.u()).unwrap(), f.get(e.v()).unwrap());
            oracle_set_sum_cardinality(a.as_slice(), b.as_slice())
        })
        .collect();
    let oracle_k = (oracle_sizes.len() == 1).then(|| *oracle_sizes.first().unwrap());
    if oracle_k != observed_k {
        return Err(Error::Internal(format!(
            "edge uniformity disagrees with oracle on {instance}"
        )));
    }

    let forward = (report.semi_arithmetic_first_kind
        && report.edge_uniform_k.is_some()
        && report.vertex_uniform_l.is_none())
    .then(|| bipartition_by_size(g, &f, p.m as usize));

    if !report.semi_arithmetic_first_kind
        || observed_k != Some(expected_k)
        || forward == Some(false)
    {
        out.counterexamples.push(graph_counterexample(
            instance,
            Evidence {
                constructible: Some(true),
                semi_arithmetic: Some(true),
                edge_uniform_k: Some(expected_k),
                bipartition_by_size: forward.map(|_| true),
                ..Evidence::default()
            },
            Evidence {
                constructible: Some(true),
                semi_arithmetic: Some(report.semi_arithmetic_first_kind),
                edge_uniform_k: observed_k,
                bipartition_by_size: forward,
                ..Evidence::default()
            },
        ));
    }
    Ok(out)
}

fn is_arithmetic_label(s: &IntegerSet) -> bool {
    recognize_ap(s).is_some_and(|d| d.length >= 3)
}

fn evaluate_transforms(
    claim: Claim,
    name: &str,
    g: &Graph,
    p: &ConstructionParams,
) -> Result<Checked> {
    let mut out = Checked::default();
    if is_bipartite(g).is_none() && p.m != p.n {
        return Ok(out);
    }
    let f = construct_first_kind(g, p)?;
    let base = describe(name, p);

    if claim == Claim::Subgraph {
        let edges: Vec<&Edge> = g.edges().collect();
        for mask in 1u32..(1 << edges.len()) {
            let chosen: BTreeSet<Edge> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| (*e).clone())
                .collect();
            let vs: BTreeSet<String> = chosen
                .iter()
                .flat_map(|e| [e.u().to_string(), e.v().to_string()])
                .collect();
            let sub = subgraph(g, &vs, &chosen)?;
            let report = classify(&sub, &f.restricted_to(&sub))?;
            out.instances += 1;
            if !report.semi_arithmetic_first_kind {
                let listed: Vec<String> = chosen.iter().map(Edge::to_string).collect();
                out.counterexamples.push(graph_counterexample(
                    format!("{base} edges [{}]", listed.join(" ")),
                    Evidence {
                        semi_arithmetic: Some(true),
                        ..Evidence::default()
                    },
                    Evidence {
                        semi_arithmetic: Some(false),
                        ..Evidence::default()
                    },
                ));
            }
        }
        return Ok(out);
    }

    let transforms: Vec<Transform> = match claim {
        Claim::LineGraph => vec![Transform::Line],
        Claim::TotalGraph => vec![Transform::Total],
        Claim::Contraction => g.edges().cloned().map(Transform::Contract).collect(),
        Claim::Subdivision => g.edges().cloned().map(Transform::Subdivide).collect(),
        _ => unreachable!("not a transform claim"),
    };
    for t in transforms {
        let derived = transport_labeling(&t, g, &f)?;
        out.instances += 1;
        let non_ap = derived
            .labeling
            .iter()
            .filter(|(_, s)| !is_arithmetic_label(s))
            .count() as u64;
        let oracle_non_ap = derived
            .labeling
            .iter()
            .filter(|(_, s)| s.len() < 3 || !oracle_is_ap(s.as_slice()))
            .count() as u64;
        if non_ap != oracle_non_ap {
            return Err(Error::Internal(format!(
                "AP recognition disagrees with oracle on {base}, {t}"
            )));
        }
        if non_ap == 0 {
            out.counterexamples.push(graph_counterexample(
                format!("{base} {t}"),
                Evidence {
                    semi_arithmetic: Some(false),
                    ..Evidence::default()
                },
                Evidence {
                    semi_arithmetic: Some(true),
                    non_ap_vertices: Some(0),
                    ..Evidence::default()
                },
            ));
        }
    }
    Ok(out)
}
