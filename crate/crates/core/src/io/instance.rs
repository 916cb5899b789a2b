//! The line-oriented instance format.
//!
//! ```text
//! flowgame 1
//! # comment
//! node s
//! node a
//! node t
//! source s
//! sink t
//! arc sa s a 2
//! arc at a t 7/2
//! ```
//!
//! The first record must be the version header. `#` starts a comment that
//! runs to the end of the line. Records may appear in any order after the
//! header; vertex order is the order of the `node` records. Capacities are
//! non-negative integers, decimals (`2.5`) or fractions (`1/3`).

use std::collections::HashMap;

use crate::error::{ParseError, ParseErrorKind};
use crate::network::FlowNetwork;
use crate::rational::{parse_rational, Capacity};

pub const FORMAT_HEADER: &str = "flowgame 1";

struct ArcRecord<'a> {
    line: usize,
    label: &'a str,
    tail: &'a str,
    head: &'a str,
    capacity: Capacity,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    err(line, ParseErrorKind::Syntax(msg.into()))
}

pub fn parse(text: &str) -> Result<FlowNetwork, ParseError> {
    let mut header_seen = false;
    let mut nodes: Vec<&str> = Vec::new();
    let mut node_line: HashMap<&str, usize> = HashMap::new();
    let mut source: Option<(usize, &str)> = None;
    let mut sink: Option<(usize, &str)> = None;
    let mut arcs: Vec<ArcRecord> = Vec::new();
    let mut labels: HashMap<&str, usize> = HashMap::new();
    let mut last_line = 1;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let body = raw.split_once('#').map_or(raw, |(b, _)| b);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            if tokens != ["flowgame", "1"] {
                return Err(syntax(line, format!("expected header `{FORMAT_HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        match tokens.as_slice() {
            ["node", id] => {
                if node_line.insert(id, line).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateVertex((*id).into())));
                }
                nodes.push(id);
            }
            ["source", id] => {
                if source.replace((line, id)).is_some() {
                    return Err(syntax(line, "source declared twice"));
                }
            }
            ["sink", id] => {
                if sink.replace((line, id)).is_some() {
                    return Err(syntax(line, "sink declared twice"));
                }
            }
            ["arc", label, tail, head, cap] => {
                let value = parse_rational(cap)
                    .ok_or_else(|| syntax(line, format!("invalid capacity `{cap}`")))?;
                let capacity = Capacity::new(value)
                    .ok_or_else(|| err(line, ParseErrorKind::NegativeCapacity((*cap).into())))?;
                if labels.insert(label, line).is_some() {
                    return Err(err(
                        line,
                        ParseErrorKind::DuplicateArcLabel((*label).into()),
                    ));
                }
                arcs.push(ArcRecord {
                    line,
                    label,
                    tail,
                    head,
                    capacity,
                });
            }
            [keyword @ ("node" | "source" | "sink" | "arc"), ..] => {
                return Err(syntax(
                    line,
                    format!("wrong number of fields for `{keyword}`"),
                ));
            }
            [other, ..] => return Err(syntax(line, format!("unknown record `{other}`"))),
            [] => unreachable!("blank lines skipped"),
        }
    }
    if !header_seen {
        return Err(syntax(
            last_line,
            format!("missing header `{FORMAT_HEADER}`"),
        ));
    }

    let known = |line: usize, id: &str| {
        if node_line.contains_key(id) {
            Ok(())
        } else {
            Err(err(line, ParseErrorKind::UnknownVertex(id.into())))
        }
    };
    let (source_line, source) = source.ok_or_else(|| syntax(last_line, "missing `source`"))?;
    let (sink_line, sink) = sink.ok_or_else(|| syntax(last_line, "missing `sink`"))?;
    known(source_line, source)?;
    known(sink_line, sink)?;
    if source == sink {
        return Err(err(
            source_line.max(sink_line),
            ParseErrorKind::SourceEqualsSink(source.into()),
        ));
    }
    for a in &arcs {
        known(a.line, a.tail)?;
        known(a.line, a.head)?;
        if a.tail == a.head {
            return Err(err(a.line, ParseErrorKind::SelfLoop(a.label.into())));
        }
    }

    let mut builder = FlowNetwork::builder()
        .vertices(nodes.iter().copied())
        .source(source)
        .sink(sink);
    for a in arcs {
        builder = builder.arc(a.label, a.tail, a.head, a.capacity);
    }
    Ok(builder
        .build()
        .expect("records were validated line by line"))
}

/// Canonical document: header, nodes, source, sink, then arcs, with
/// capacities as reduced fractions. `parse` inverts it exactly.
pub fn serialize(network: &FlowNetwork) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    for v in network.vertex_names() {
        out.push_str(&format!("node {v}\n"));
    }
    out.push_str(&format!(
        "source {}\nsink {}\n",
        network.vertex_name(network.source()),
        network.vertex_name(network.sink())
    ));
    for arc in network.arcs() {
        out.push_str(&format!(
            "arc {} {} {} {}\n",
            arc.id,
            network.vertex_name(arc.tail),
            network.vertex_name(arc.head),
            arc.capacity
        ));
    }
    out
}
