//! Structured (JSON) and plain-text renderings of results.
//!
//! JSON objects have sorted keys and every rational is a `"p/q"` string (or
//! a bare integer string), so equal inputs give byte-identical documents.
//! Arcs are referred to by label.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::game::{Allocation, ConvexityViolation, CoreCheck, DividendTable, Pmas, PmasFailure};
use crate::network::{Coalition, FlowNetwork, StPath};
use crate::rational::{format_rational, parse_rational, Capacity, Rational};
use crate::recognition::{
    Certificate, Decision, DiagnosticReport, Evidence, Outcome, Verdict, Witness,
};

fn labels(network: &FlowNetwork, arcs: impl IntoIterator<Item = usize>) -> Value {
    arcs.into_iter()
        .map(|a| Value::String(network.label(a).to_owned()))
        .collect()
}

fn rational(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

fn capacity(value: &Capacity) -> Value {
    Value::String(value.to_string())
}

fn path(network: &FlowNetwork, p: &StPath) -> Value {
    json!({
        "arcs": labels(network, p.arcs().iter().copied()),
        "capacity": capacity(p.capacity()),
    })
}

pub fn certificate_json(network: &FlowNetwork, certificate: &Certificate) -> Value {
    json!({
        "paths": certificate.paths().iter().map(|p| path(network, p)).collect::<Vec<_>>(),
        "bottlenecks": labels(network, certificate.bottlenecks().iter()),
    })
}

pub fn witness_json(network: &FlowNetwork, witness: &Witness) -> Value {
    let kind = witness.kind().as_str();
    match witness {
        Witness::Cycle { arcs } => json!({
            "kind": kind,
            "arcs": labels(network, arcs.iter().copied()),
        }),
        Witness::SharedBottleneck {
            arc,
            anchored,
            other,
        } => json!({
            "kind": kind,
            "arc": network.label(*arc),
            "anchored": path(network, anchored),
            "other": path(network, other),
        }),
        Witness::CapacityDeficit {
            arc,
            paths,
            capacity: c,
            demand,
        } => json!({
            "kind": kind,
            "arc": network.label(*arc),
            "capacity": capacity(c),
            "demand": capacity(demand),
            "paths": paths.iter().map(|p| path(network, p)).collect::<Vec<_>>(),
        }),
        Witness::DummyArcRetained { arc } => json!({
            "kind": kind,
            "arc": network.label(*arc),
        }),
    }
}

pub fn diagnostics_json(network: &FlowNetwork, report: &DiagnosticReport) -> Value {
    report
        .checks
        .iter()
        .map(|check| {
            let mut obj = Map::new();
            obj.insert("check".into(), check.kind.as_str().into());
            match &check.outcome {
                Outcome::Pass => {
                    obj.insert("outcome".into(), "pass".into());
                }
                Outcome::Skipped(reason) => {
                    obj.insert("outcome".into(), "skipped".into());
                    obj.insert("reason".into(), reason.clone().into());
                }
                Outcome::Fail(evidence) => {
                    obj.insert("outcome".into(), "fail".into());
                    obj.insert("evidence".into(), evidence_json(network, evidence));
                }
            }
            Value::Object(obj)
        })
        .collect()
}

fn evidence_json(network: &FlowNetwork, evidence: &Evidence) -> Value {
    match evidence {
        Evidence::NoFlow { arc } => json!({ "no_flow": network.label(*arc) }),
        Evidence::NotCritical { arc } => json!({ "not_critical": network.label(*arc) }),
        Evidence::Cycle { arcs } => json!({ "cycle": labels(network, arcs.iter().copied()) }),
        Evidence::Degree {
            vertex,
            in_degree,
            out_degree,
        } => json!({
            "vertex": network.vertex_name(*vertex),
            "in_degree": in_degree,
            "out_degree": out_degree,
        }),
        Evidence::SharedBottleneck { arc, count } => json!({
            "arc": network.label(*arc),
            "paths": count.to_string(),
        }),
        Evidence::CapacityDeficit {
            arc,
            capacity: c,
            demand,
        } => json!({
            "arc": network.label(*arc),
            "capacity": capacity(c),
            "demand": capacity(demand),
        }),
        Evidence::UncoveredArc { arc } => json!({ "uncovered": network.label(*arc) }),
    }
}

/// The document for `check`: `verdict`, `certificate` or `witness`,
/// `removed_dummies`, and `diagnostics` when given.
pub fn verdict_json(
    network: &FlowNetwork,
    verdict: &Verdict,
    diagnostics: Option<&DiagnosticReport>,
) -> Value {
    let mut doc = Map::new();
    match &verdict.decision {
        Decision::Convex(cert) => {
            doc.insert("verdict".into(), "convex".into());
            doc.insert("certificate".into(), certificate_json(network, cert));
        }
        Decision::NotConvex(w) => {
            doc.insert("verdict".into(), "not_convex".into());
            doc.insert("witness".into(), witness_json(network, w));
        }
    }
    doc.insert(
        "removed_dummies".into(),
        labels(network, verdict.removed_dummies.iter().copied()),
    );
    if let Some(report) = diagnostics {
        doc.insert("diagnostics".into(), diagnostics_json(network, report));
    }
    Value::Object(doc)
}

/// Payoffs keyed by arc label.
pub fn allocation_json(network: &FlowNetwork, allocation: &Allocation) -> Value {
    Value::Object(
        allocation
            .iter()
            .map(|(a, x)| (network.label(a).to_owned(), rational(x)))
            .collect(),
    )
}

pub fn dividends_json(network: &FlowNetwork, table: &DividendTable) -> Value {
    table
        .nonzero()
        .map(|(c, d)| json!({ "coalition": labels(network, c.iter()), "dividend": rational(d) }))
        .collect()
}

pub fn pmas_json(network: &FlowNetwork, scheme: &Pmas) -> Value {
    scheme
        .iter()
        .map(|(c, y)| {
            json!({
                "coalition": labels(network, c.iter()),
                "allocation": allocation_json(network, y),
            })
        })
        .collect()
}

pub fn violation_json(network: &FlowNetwork, v: &ConvexityViolation) -> Value {
    json!({
        "player": network.label(v.player),
        "smaller": labels(network, v.smaller.iter()),
        "larger": labels(network, v.larger.iter()),
        "smaller_marginal": rational(&v.smaller_marginal()),
        "larger_marginal": rational(&v.larger_marginal()),
    })
}

pub fn core_check_json(network: &FlowNetwork, check: &CoreCheck) -> Value {
    match check {
        CoreCheck::InCore => json!({ "in_core": true }),
        CoreCheck::Blocked {
            coalition,
            payoff,
            value,
        } => json!({
            "in_core": false,
            "blocking": labels(network, coalition.iter()),
            "payoff": rational(payoff),
            "value": capacity(value),
        }),
    }
}

pub fn pmas_failure_json(network: &FlowNetwork, failure: &PmasFailure) -> Value {
    match failure {
        PmasFailure::Efficiency {
            coalition,
            allocated,
            value,
        } => json!({
            "failure": "efficiency",
            "coalition": labels(network, coalition.iter()),
            "allocated": rational(allocated),
            "value": capacity(value),
        }),
        PmasFailure::Monotonicity {
            smaller,
            larger,
            player,
            smaller_payoff,
            larger_payoff,
        } => json!({
            "failure": "monotonicity",
            "smaller": labels(network, smaller.iter()),
            "larger": labels(network, larger.iter()),
            "player": network.label(*player),
            "smaller_payoff": rational(smaller_payoff),
            "larger_payoff": rational(larger_payoff),
        }),
    }
}

/// Pretty-printed with a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values are serializable");
    s.push('\n');
    s
}

fn read_path(network: &FlowNetwork, value: &Value) -> Option<StPath> {
    let arcs = value
        .get("arcs")?
        .as_array()?
        .iter()
        .map(|a| network.arc_index(a.as_str()?))
        .collect::<Option<Vec<usize>>>()?;
    let path = StPath::new(network, arcs)?;
    let stated = Capacity::new(parse_rational(value.get("capacity")?.as_str()?)?)?;
    (path.capacity() == &stated).then_some(path)
}

fn read_arc(network: &FlowNetwork, value: &Value) -> Option<usize> {
    network.arc_index(value.as_str()?)
}

/// Rebuilds the certificate of a `check` document so it can be verified
/// against the network without recognition.
pub fn read_certificate(network: &FlowNetwork, doc: &Value) -> Option<Certificate> {
    let paths = doc
        .get("certificate")?
        .get("paths")?
        .as_array()?
        .iter()
        .map(|p| read_path(network, p))
        .collect::<Option<Vec<_>>>()?;
    Certificate::from_paths(network, paths).ok()
}

/// Rebuilds the witness of a `check` document.
pub fn read_witness(network: &FlowNetwork, doc: &Value) -> Option<Witness> {
    let w = doc.get("witness")?;
    match w.get("kind")?.as_str()? {
        "cycle" => Some(Witness::Cycle {
            arcs: w
                .get("arcs")?
                .as_array()?
                .iter()
                .map(|a| read_arc(network, a))
                .collect::<Option<_>>()?,
        }),
        "shared_bottleneck" => Some(Witness::SharedBottleneck {
            arc: read_arc(network, w.get("arc")?)?,
            anchored: read_path(network, w.get("anchored")?)?,
            other: read_path(network, w.get("other")?)?,
        }),
        "capacity_deficit" => Some(Witness::CapacityDeficit {
            arc: read_arc(network, w.get("arc")?)?,
            paths: w
                .get("paths")?
                .as_array()?
                .iter()
                .map(|p| read_path(network, p))
                .collect::<Option<_>>()?,
            capacity: Capacity::new(parse_rational(w.get("capacity")?.as_str()?)?)?,
            demand: Capacity::new(parse_rational(w.get("demand")?.as_str()?)?)?,
        }),
        "dummy_arc_retained" => Some(Witness::DummyArcRetained {
            arc: read_arc(network, w.get("arc")?)?,
        }),
        _ => None,
    }
}

fn join(network: &FlowNetwork, arcs: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<&str> = arcs.into_iter().map(|a| network.label(a)).collect();
    if names.is_empty() {
        "(none)".to_owned()
    } else {
        names.join(" ")
    }
}

fn path_text(network: &FlowNetwork, p: &StPath) -> String {
    format!(
        "{} (capacity {})",
        join(network, p.arcs().iter().copied()),
        p.capacity()
    )
}

pub fn verdict_text(
    network: &FlowNetwork,
    verdict: &Verdict,
    diagnostics: Option<&DiagnosticReport>,
) -> String {
    let mut out = String::new();
    match &verdict.decision {
        Decision::Convex(cert) => {
            out.push_str("convex\n");
            out.push_str("paths:\n");
            for p in cert.paths() {
                let _ = writeln!(out, "  {}", path_text(network, p));
            }
            let _ = writeln!(
                out,
                "bottlenecks: {}",
                join(network, cert.bottlenecks().iter())
            );
        }
        Decision::NotConvex(w) => {
            out.push_str("not convex\n");
            match w {
                Witness::Cycle { arcs } => {
                    let _ = writeln!(out, "cycle: {}", join(network, arcs.iter().copied()));
                }
                Witness::SharedBottleneck {
                    arc,
                    anchored,
                    other,
                } => {
                    let _ = writeln!(out, "shared bottleneck: {}", network.label(*arc));
                    let _ = writeln!(out, "  {}", path_text(network, anchored));
                    let _ = writeln!(out, "  {}", path_text(network, other));
                }
                Witness::CapacityDeficit {
                    arc,
                    paths,
                    capacity,
                    demand,
                } => {
                    let _ = writeln!(
                        out,
                        "capacity deficit: {} has capacity {capacity} but carries {demand}",
                        network.label(*arc)
                    );
                    for p in paths {
                        let _ = writeln!(out, "  {}", path_text(network, p));
                    }
                }
                Witness::DummyArcRetained { arc } => {
                    let _ = writeln!(out, "dummy arc retained: {}", network.label(*arc));
                }
            }
        }
    }
    let _ = writeln!(
        out,
        "removed dummies: {}",
        join(network, verdict.removed_dummies.iter().copied())
    );
    if let Some(report) = diagnostics {
        out.push_str("diagnostics:\n");
        for check in &report.checks {
            let status = match &check.outcome {
                Outcome::Pass => "pass".to_owned(),
                Outcome::Skipped(reason) => format!("skipped ({reason})"),
                Outcome::Fail(e) => format!("fail {}", evidence_json(network, e)),
            };
            let _ = writeln!(out, "  {}: {status}", check.kind.as_str());
        }
    }
    out
}

pub fn allocation_text(network: &FlowNetwork, allocation: &Allocation) -> String {
    allocation
        .iter()
        .map(|(a, x)| format!("{} {}\n", network.label(a), format_rational(x)))
        .collect()
}

pub fn coalition_text(network: &FlowNetwork, coalition: &Coalition) -> String {
    join(network, coalition.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::recognition::{recognize, shapley_fast, verify_certificate};

    #[test]
    fn convex_document() {
        let n2 = fixtures::n2();
        let doc = verdict_json(&n2, &recognize(&n2), None);
        assert_eq!(doc["verdict"], "convex");
        let caps: Vec<&str> = doc["certificate"]["paths"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["capacity"].as_str().unwrap())
            .collect();
        assert_eq!(caps, ["2", "3"]);
        let cert = read_certificate(&n2, &doc).unwrap();
        verify_certificate(&n2, &cert).unwrap();
    }

    #[test]
    fn witnesses_survive_a_round_trip() {
        for (_, n) in fixtures::all() {
            let v = recognize(&n);
            let doc = verdict_json(&n, &v, None);
            if let Some(w) = v.witness() {
                assert_eq!(read_witness(&n, &doc).as_ref(), Some(w));
            }
        }
    }

    #[test]
    fn shapley_rendering() {
        let n2 = fixtures::n2();
        let phi = shapley_fast(recognize(&n2).certificate().unwrap());
        assert_eq!(allocation_json(&n2, &phi)["sa"], "5/2");
        assert_eq!(allocation_text(&n2, &phi), "sa 5/2\ne1 1\ne2 3/2\n");
    }
}
