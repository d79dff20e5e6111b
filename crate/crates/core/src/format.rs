//! Plain-text instance format.
//!
//! ```text
//! # label: p3
//! cds 3 2 1
//! 1 1 1
//! 0 1
//! 1 2
//! ```
//!
//! Line one is `cds <n> <edge_count> <m>`, line two holds the `n` node
//! costs. UDG instances follow with a `coords` line and `n` lines of `x y`.
//! Then come `edge_count` lines `u v` with `u < v`. Lines starting with `#`
//! are comments; a comment of the form `# label: <text>` names the instance.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, Instance, NodeId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: malformed cost line: {msg}")]
    Costs { line: usize, msg: String },
    #[error("line {line}: malformed coordinate: {msg}")]
    Coords { line: usize, msg: String },
    #[error("line {line}: malformed edge: {msg}")]
    Edge { line: usize, msg: String },
    #[error("line {line}: edge ({u}, {v}) must satisfy u < v")]
    EdgeOrder { line: usize, u: NodeId, v: NodeId },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error("line {0}: trailing content after the last edge")]
    Trailing(usize),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolutionError {
    #[error("token {0:?} is not a node id")]
    NotANumber(String),
    #[error("node id {id} out of range 0..{n}")]
    OutOfRange { id: usize, n: usize },
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    label: Option<String>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            label: None,
        }
    }

    /// Next non-blank, non-comment line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(label) = comment.trim_start().strip_prefix("label:") {
                    self.label.get_or_insert_with(|| label.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            return Some((i + 1, line));
        }
        None
    }
}

fn parse_f64(tok: &str) -> Option<f64> {
    tok.parse::<f64>().ok()
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);

    let (hl, header) = lines
        .next_content()
        .ok_or(ParseError::Truncated("header"))?;
    let head_err = |msg: &str| ParseError::Header {
        line: hl,
        msg: msg.to_string(),
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "cds" {
        return Err(head_err("expected `cds <n> <edge_count> <m>`"));
    }
    let n: usize = toks[1].parse().map_err(|_| head_err("bad node count"))?;
    let edge_count: usize = toks[2].parse().map_err(|_| head_err("bad edge count"))?;
    let m: usize = toks[3]
        .parse()
        .map_err(|_| head_err("bad fold requirement"))?;
    if n == 0 {
        return Err(head_err("node count must be positive"));
    }
    if m == 0 {
        return Err(head_err("fold requirement must be positive"));
    }

    let (cl, cost_line) = lines
        .next_content()
        .ok_or(ParseError::Truncated("cost line"))?;
    let costs: Vec<f64> = cost_line
        .split_whitespace()
        .map(|t| {
            parse_f64(t).ok_or_else(|| ParseError::Costs {
                line: cl,
                msg: format!("{t:?} is not a number"),
            })
        })
        .collect::<Result<_, _>>()?;
    if costs.len() != n {
        return Err(ParseError::Costs {
            line: cl,
            msg: format!("expected {n} costs, found {}", costs.len()),
        });
    }

    let mut pending = lines.next_content();
    let mut coords = None;
    if let Some((_, "coords")) = pending {
        let mut pts = Vec::with_capacity(n);
        for _ in 0..n {
            let (l, line) = lines
                .next_content()
                .ok_or(ParseError::Truncated("coordinates"))?;
            let xy: Vec<f64> = line
                .split_whitespace()
                .map(parse_f64)
                .collect::<Option<_>>()
                .filter(|v: &Vec<f64>| v.len() == 2)
                .ok_or_else(|| ParseError::Coords {
                    line: l,
                    msg: "expected `x y`".into(),
                })?;
            pts.push((xy[0], xy[1]));
        }
        coords = Some(pts);
        pending = lines.next_content();
    }

    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let (l, line) = pending.ok_or(ParseError::Truncated("edge list"))?;
        let uv: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()
            .filter(|v: &Vec<usize>| v.len() == 2)
            .ok_or_else(|| ParseError::Edge {
                line: l,
                msg: "expected `u v`".into(),
            })?;
        let (u, v) = (uv[0], uv[1]);
        if u == v {
            return Err(GraphError::SelfLoop(u).into());
        }
        if u > v {
            return Err(ParseError::EdgeOrder { line: l, u, v });
        }
        edges.push((u, v));
        pending = lines.next_content();
    }
    if let Some((l, _)) = pending {
        return Err(ParseError::Trailing(l));
    }

    let graph = WeightedGraph::new(costs, &edges, coords)?;
    let label = lines.label.take().unwrap_or_default();
    Ok(Instance::new(graph, m, label)?)
}

/// Formats `x` with 17 significant digits in positional notation.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    // exponent of the leading digit, read off the scientific rendering
    let sci = format!("{:.16e}", x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (16 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Canonical text form: sorted edges, 17-significant-digit floats.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    if !inst.label.is_empty() {
        let label = inst.label.replace(['\n', '\r'], " ");
        let _ = writeln!(out, "# label: {label}");
    }
    let _ = writeln!(
        out,
        "cds {} {} {}",
        g.node_count(),
        g.edge_count(),
        inst.m()
    );
    let costs: Vec<String> = g.costs().iter().map(|&c| format_float(c)).collect();
    out.push_str(&costs.join(" "));
    out.push('\n');
    if let Some(coords) = g.coords() {
        out.push_str("coords\n");
        for &(x, y) in coords {
            let _ = writeln!(out, "{} {}", format_float(x), format_float(y));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a whitespace-separated node id list. Duplicates are collapsed;
/// the result is sorted.
pub fn parse_solution(text: &str, n: usize) -> Result<Vec<NodeId>, SolutionError> {
    let mut ids = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let id: usize = tok
                .parse()
                .map_err(|_| SolutionError::NotANumber(tok.to_string()))?;
            if id >= n {
                return Err(SolutionError::OutOfRange { id, n });
            }
            ids.push(id);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// Writes a node set one id per line.
pub fn serialize_solution(nodes: &[NodeId]) -> String {
    let mut out = String::new();
    for u in nodes {
        let _ = writeln!(out, "{u}");
    }
    out
}
