//! Line-oriented text format and Graphviz DOT export.
//!
//! ```text
//! graph <name> ambient=<k> vertices=<n> basepoint=<id|none>
//! e <src> <dst> <gen>
//! ```
//!
//! Vertex ids are 0-based, generator indices 1-based.

use std::fmt::Write as _;

use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Text,
}

pub fn export_graph(g: &LabeledGraph, name: &str, format: ExportFormat) -> String {
    match format {
        ExportFormat::Text => export_text(g, name),
        ExportFormat::Dot => export_dot(g, name),
    }
}

fn export_text(g: &LabeledGraph, name: &str) -> String {
    let mut out = String::new();
    let base = match g.basepoint() {
        Some(b) => b.to_string(),
        None => "none".to_string(),
    };
    writeln!(
        out,
        "graph {name} ambient={} vertices={} basepoint={base}",
        g.ambient_rank(),
        g.vertex_count()
    )
    .unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.src, e.dst, e.label).unwrap();
    }
    out
}

fn export_dot(g: &LabeledGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    for v in 0..g.vertex_count() {
        let shape = if g.basepoint() == Some(v) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  v{v} [shape={shape}];").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  v{} -> v{} [label=\"g{}\"];", e.src, e.dst, e.label).unwrap();
    }
    out.push_str("}\n");
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn keyed<'a>(line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing `{key}=`")))?;
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=`, found `{token}`")))
}

/// Parses the text format, returning the graph name and the graph.
pub fn import_text(input: &str) -> Result<(String, LabeledGraph)> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("graph") {
        return Err(parse_err(n, "expected `graph` header"));
    }
    let name = tokens
        .next()
        .ok_or_else(|| parse_err(n, "missing graph name"))?
        .to_string();
    let ambient: u32 = keyed(n, tokens.next(), "ambient")?
        .parse()
        .map_err(|_| parse_err(n, "bad ambient rank"))?;
    let vertices: usize = keyed(n, tokens.next(), "vertices")?
        .parse()
        .map_err(|_| parse_err(n, "bad vertex count"))?;
    let base = match keyed(n, tokens.next(), "basepoint")? {
        "none" => None,
        b => Some(b.parse().map_err(|_| parse_err(n, "bad basepoint"))?),
    };
    if tokens.next().is_some() {
        return Err(parse_err(n, "trailing tokens in header"));
    }

    let mut edges = Vec::new();
    for (n, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "e" {
            return Err(parse_err(
                n,
                format!("expected `e <src> <dst> <gen>`, found `{line}`"),
            ));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(n, format!("bad number `{s}`")))
        };
        edges.push(Edge {
            src: num(parts[1])?,
            dst: num(parts[2])?,
            label: num(parts[3])? as u32,
        });
    }
    let g = LabeledGraph::new(ambient, vertices, edges, base)?;
    Ok((name, g))
}
