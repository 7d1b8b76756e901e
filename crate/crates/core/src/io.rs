//! Input parsing (JSON, edge lists, matrix text) and certificate emission
//! (JSON, plain text, DOT).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bigraph::Representation;
use crate::certificate::{BigraphIntervals, Certificate, IntervalAssignment, ProbeCertificate, Witness};
use crate::error::{Error, Result};
use crate::ferrers::FerrersFactorization;
use crate::graph::Graph;
use crate::matrix::{Entry, LabeledMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    Auto,
    Json,
    Edgelist,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Graph(Graph),
    Matrix(LabeledMatrix),
}

impl Input {
    /// The graph itself, or the graph of a square matrix whose rows and
    /// columns carry the same ids (off-diagonal `1`s are edges).
    pub fn into_graph(self) -> Result<Graph> {
        match self {
            Input::Graph(g) => Ok(g),
            Input::Matrix(m) => matrix_to_graph(&m),
        }
    }

    /// The matrix itself, or the graph's probe bigraph (all rows when no
    /// nonprobe set is given).
    pub fn into_matrix(self) -> Result<LabeledMatrix> {
        match self {
            Input::Matrix(m) => Ok(m),
            Input::Graph(g) => {
                let g = if g.has_nonprobes() { g } else { g.with_nonprobes(&[])? };
                crate::graph::probe_bigraph(&g)
            }
        }
    }
}

fn matrix_to_graph(m: &LabeledMatrix) -> Result<Graph> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    if m.rows() != m.cols() {
        return Err(Error::Precondition("row and column ids differ".into()));
    }
    m.require_binary()?;
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    let names: Vec<String> = m.rows().iter().map(|id| id.to_string()).collect();
    let edges: Vec<(String, String)> = m
        .entries()
        .filter(|&(i, j, e)| i < j && e == Entry::One)
        .map(|(i, j, _)| (names[i].clone(), names[j].clone()))
        .collect();
    Graph::build(&names, &edges, None)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    nonprobes: Option<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() }
}

fn parse_json(text: &str) -> Result<Input> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    if value.get("entries").is_some() {
        return serde_json::from_value(value)
            .map(Input::Matrix)
            .map_err(|e| Error::Parse { line: 1, col: 1, msg: e.to_string() });
    }
    let g: GraphJson = serde_json::from_str(text).map_err(json_error)?;
    Ok(Input::Graph(Graph::build(&g.vertices, &g.edges, g.nonprobes.as_deref())?))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn header_values<'a>(line: &'a str, key: &str) -> Option<Vec<&'a str>> {
    let rest = line.trim_start().strip_prefix('#')?.trim_start().strip_prefix(key)?;
    let rest = rest.trim_start().strip_prefix(':')?;
    Some(rest.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect())
}

/// One edge per line as two vertex names. Optional header lines
/// `#vertices: a b c` (isolated vertices, fixed order) and
/// `#nonprobes: e f`.
fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut nonprobes: Option<Vec<String>> = None;
    for line in text.lines() {
        if let Some(vs) = header_values(line, "vertices") {
            vertices.extend(vs.into_iter().map(String::from));
        } else if let Some(vs) = header_values(line, "nonprobes") {
            nonprobes.get_or_insert_with(Vec::new).extend(vs.into_iter().map(String::from));
        }
    }
    let mut edges = Vec::new();
    for (no, line) in data_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(Error::Parse {
                line: no + 1,
                col,
                msg: format!("expected an edge 'u v', found {} token(s)", toks.len()),
            });
        }
        edges.push((toks[0].to_string(), toks[1].to_string()));
    }
    Graph::build(&vertices, &edges, nonprobes.as_deref())
}

fn has_graph_headers(text: &str) -> bool {
    text.lines().any(|l| header_values(l, "vertices").is_some() || header_values(l, "nonprobes").is_some())
}

/// Matrix text: a header of `k` ids followed by at least one row of `k + 1`
/// tokens, all rows the same width.
fn looks_like_matrix(text: &str) -> bool {
    let mut lines = data_lines(text).map(|(_, l)| l.split_whitespace().count());
    let Some(k) = lines.next() else { return false };
    let rest: Vec<usize> = lines.collect();
    !rest.is_empty() && rest.iter().all(|&w| w == k + 1)
}

pub fn parse_input(text: &str, format: InputFormat) -> Result<Input> {
    match format {
        InputFormat::Json => parse_json(text),
        InputFormat::Edgelist => parse_edgelist(text).map(Input::Graph),
        InputFormat::Matrix => LabeledMatrix::from_text(text).map(Input::Matrix),
        InputFormat::Auto => {
            if text.trim_start().starts_with('{') {
                parse_json(text)
            } else if !has_graph_headers(text) && looks_like_matrix(text) {
                LabeledMatrix::from_text(text).map(Input::Matrix)
            } else {
                parse_edgelist(text).map(Input::Graph)
            }
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String> {
    let read = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|e| Error::Parse { line: 0, col: 0, msg: format!("{path}: {e}") })
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificates serialize");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph; each vertex is labeled with its interval when one is
/// known, and nonprobes are drawn as dashed boxes.
pub fn graph_dot(g: &Graph, intervals: Option<&IntervalAssignment>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let name = g.name(v);
        let label = match intervals.and_then(|ia| ia.get(name)) {
            Some(iv) => format!("{name} {iv}"),
            None => name.to_string(),
        };
        let style = if g.is_nonprobe(v) { ", shape=box, style=dashed" } else { "" };
        let _ = writeln!(out, "  {} [label={}{}];", quote(name), quote(&label), style);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(g.name(u)), quote(g.name(v)));
    }
    out.push_str("}\n");
    out
}

/// DOT graph of a bigraph: row vertices as boxes, column vertices as
/// ellipses, one edge per `1`.
pub fn bigraph_dot(m: &LabeledMatrix, intervals: Option<&BigraphIntervals>) -> String {
    let mut out = String::from("graph B {\n");
    let label = |id: String, iv: Option<crate::certificate::Interval>| match iv {
        Some(iv) => format!("{id} {iv}"),
        None => id,
    };
    for r in m.rows() {
        let iv = intervals.and_then(|ia| ia.row(r));
        let _ = writeln!(out, "  {} [label={}, shape=box];", quote(&format!("r:{r}")), quote(&label(r.to_string(), iv)));
    }
    for c in m.cols() {
        let iv = intervals.and_then(|ia| ia.col(c));
        let _ = writeln!(out, "  {} [label={}];", quote(&format!("c:{c}")), quote(&label(c.to_string(), iv)));
    }
    for (i, j, e) in m.entries() {
        if e == Entry::One {
            let _ = writeln!(out, "  {} -- {};", quote(&format!("r:{}", m.rows()[i])), quote(&format!("c:{}", m.cols()[j])));
        }
    }
    out.push_str("}\n");
    out
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::OddCycle { positions } => {
            let cells: Vec<String> = positions.iter().map(|z| format!("({},{})", z.row, z.col)).collect();
            format!("odd couple cycle {}", cells.join(" "))
        }
        Witness::ForbiddenSubmatrix { p, q, n } => format!("forbidden submatrix p={p} q={q} n={n}"),
        Witness::Exhausted => "search exhausted".to_string(),
    }
}

fn intervals_text(out: &mut String, ia: &IntervalAssignment) {
    out.push_str("intervals:\n");
    for (v, iv) in ia.iter() {
        let _ = writeln!(out, "  {v} {iv}");
    }
}

fn bigraph_intervals_text(out: &mut String, title: &str, ia: &BigraphIntervals) {
    let _ = writeln!(out, "{title}:");
    for (id, iv) in &ia.rows {
        let _ = writeln!(out, "  row {id} {iv}");
    }
    for (id, iv) in &ia.cols {
        let _ = writeln!(out, "  col {id} {iv}");
    }
}

fn factorization_text(out: &mut String, f: &FerrersFactorization) {
    for (k, factor) in f.factors.iter().enumerate() {
        let _ = writeln!(out, "factor {}:", k + 1);
        out.push_str(&factor.to_text());
    }
}

/// `graph` is needed for DOT output of graph certificates; the matrix for
/// DOT output of bigraph certificates.
pub fn emit_certificate(cert: &Certificate, graph: Option<&Graph>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(cert),
        OutputFormat::Text => {
            let ev = &cert.evidence;
            let mut out = String::new();
            let kind = serde_json::to_value(cert.kind).expect("kind serializes");
            let _ = writeln!(out, "verdict: {}", if cert.is_yes() { "yes" } else { "no" });
            let _ = writeln!(out, "kind: {}", kind.as_str().unwrap_or_default());
            if let Some(order) = &ev.order {
                let _ = writeln!(out, "order: {}", order.join(" "));
            }
            if let Some(rows) = &ev.row_order {
                let _ = writeln!(out, "row order: {}", rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
            }
            if let Some(cols) = &ev.col_order {
                let _ = writeln!(out, "column order: {}", cols.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
            }
            if let Some(m) = &ev.labeling {
                out.push_str("labeling:\n");
                out.push_str(&m.to_text());
            }
            if let Some(ia) = &ev.intervals {
                intervals_text(&mut out, ia);
            }
            if let Some(bi) = &ev.bigraph_intervals {
                bigraph_intervals_text(&mut out, "intervals", bi);
            }
            if let Some(f) = &ev.factors {
                factorization_text(&mut out, f);
            }
            if let Some(v) = ev.cross_check {
                let _ = writeln!(out, "cross-check: {}", if v.is_yes() { "yes" } else { "no" });
            }
            if let Some(w) = &cert.witness {
                let _ = writeln!(out, "witness: {}", witness_text(w));
            }
            out
        }
        OutputFormat::Dot => match (graph, &cert.evidence.labeling) {
            (Some(g), _) => graph_dot(g, cert.evidence.intervals.as_ref()),
            (None, Some(m)) => bigraph_dot(&m.to_binary(), cert.evidence.bigraph_intervals.as_ref()),
            (None, None) => String::from("graph G {\n}\n"),
        },
    }
}

pub fn emit_probe_certificates(certs: &[ProbeCertificate], graph: &Graph, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json if certs.len() == 1 => to_json(&certs[0]),
        OutputFormat::Json => to_json(certs),
        OutputFormat::Text => {
            let mut out = String::new();
            for cert in certs {
                let route = serde_json::to_value(cert.route).expect("route serializes");
                let _ = writeln!(out, "route: {}", route.as_str().unwrap_or_default());
                let _ = writeln!(out, "verdict: {}", if cert.is_yes() { "yes" } else { "no" });
                let _ = writeln!(out, "nonprobes: {}", cert.nonprobes.join(" "));
                if let Some(order) = &cert.order {
                    let _ = writeln!(out, "order: {}", order.join(" "));
                }
                if let Some(m) = &cert.labeling {
                    out.push_str("labeling:\n");
                    out.push_str(&m.to_text());
                }
                if let Some(ia) = &cert.intervals {
                    intervals_text(&mut out, ia);
                }
                if let Some(w) = &cert.witness {
                    let _ = writeln!(out, "witness: {}", witness_text(w));
                }
                if let Some(w) = &cert.bigraph_witness {
                    let _ = writeln!(out, "bigraph witness: {}", witness_text(w));
                }
            }
            out
        }
        OutputFormat::Dot => graph_dot(graph, certs.iter().find_map(|c| c.intervals.as_ref())),
    }
}

pub fn emit_matrix(m: &LabeledMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(m),
        OutputFormat::Text => m.to_text(),
        OutputFormat::Dot => bigraph_dot(&m.to_binary(), None),
    }
}

pub fn emit_representation(rep: &Representation, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(rep),
        OutputFormat::Text => {
            let method = serde_json::to_value(rep.method).expect("method serializes");
            let mut out = String::from("labeling:\n");
            out.push_str(&rep.labeled.to_text());
            let _ = writeln!(out, "diagonalized ({}):", method.as_str().unwrap_or_default());
            out.push_str(&rep.diagonalized.to_text());
            bigraph_intervals_text(&mut out, "intervals", &rep.full);
            bigraph_intervals_text(&mut out, "stripped", &rep.stripped);
            out
        }
        OutputFormat::Dot => bigraph_dot(&rep.labeled.to_binary(), Some(&rep.stripped)),
    }
}

pub fn emit_factorization(f: &FerrersFactorization, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(f),
        OutputFormat::Text => {
            let mut out = String::new();
            factorization_text(&mut out, f);
            out.push_str("target:\n");
            out.push_str(&f.target.to_text());
            out
        }
        OutputFormat::Dot => bigraph_dot(&f.target, None),
    }
}

pub fn emit_json<T: Serialize + ?Sized>(value: &T) -> String {
    to_json(value)
}
