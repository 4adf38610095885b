//! Graph files (METIS, edge lists) and update streams.

use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{DynGraph, GraphError, VertexId, Weight};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Metis,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metis" => Ok(GraphFormat::Metis),
            "edgelist" | "edge-list" | "dimacs" | "dimacs-edgelist" => Ok(GraphFormat::EdgeList),
            _ => Err(format!("unknown graph format `{s}` (expected metis or edgelist)")),
        }
    }
}

fn num<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

pub fn parse_graph(path: &Path, format: GraphFormat) -> Result<DynGraph, ParseError> {
    parse_graph_str(&std::fs::read_to_string(path)?, format)
}

pub fn parse_graph_str(text: &str, format: GraphFormat) -> Result<DynGraph, ParseError> {
    match format {
        GraphFormat::Metis => parse_metis(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// METIS: header `n m [fmt [ncon]]`, then one 1-indexed adjacency line per
/// vertex. Every edge appears at both endpoints and is read once.
pub fn parse_metis(text: &str) -> Result<DynGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('%'));
    let (hl, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| syntax(1, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() < 2 || h.len() > 4 {
        return Err(syntax(hl, "header must be `n m [fmt [ncon]]`"));
    }
    let n: usize = num(h[0], hl, "vertex count")?;
    let _m: usize = num(h[1], hl, "edge count")?;
    let fmt = h.get(2).copied().unwrap_or("0");
    let fmt = format!("{fmt:0>3}");
    let edge_weights = fmt.ends_with('1');
    let vertex_weights = fmt.as_bytes()[1] == b'1';
    let ncon: usize = match h.get(3) {
        Some(t) => num(t, hl, "ncon")?,
        None => usize::from(vertex_weights),
    };
    let mut g = DynGraph::new(n);
    let mut x = 0;
    for (ln, line) in lines {
        if x == n {
            if line.is_empty() {
                continue;
            }
            return Err(syntax(ln, "more adjacency lines than vertices"));
        }
        let toks: Vec<&str> = line.split_whitespace().skip(ncon).collect();
        let step = if edge_weights { 2 } else { 1 };
        if !toks.len().is_multiple_of(step) {
            return Err(syntax(ln, "odd number of tokens with edge weights"));
        }
        for chunk in toks.chunks(step) {
            let y: usize = num(chunk[0], ln, "neighbor")?;
            if y == 0 || y > n {
                return Err(syntax(ln, format!("neighbor {y} out of range 1..={n}")));
            }
            let w: Weight = if edge_weights { num(chunk[1], ln, "weight")? } else { 1 };
            let y = y - 1;
            if x < y && w > 0 {
                g.insert_edge(x, y, w).map_err(|source| ParseError::Graph { line: ln, source })?;
            }
        }
        x += 1;
    }
    if x != n {
        return Err(syntax(text.lines().count(), format!("expected {n} adjacency lines, found {x}")));
    }
    Ok(g)
}

/// Edge list: `u v [w]` per line, 0-indexed, `#` and `%` comments. A
/// `# n <count>` comment fixes the vertex count; otherwise it is the largest
/// id plus one. Duplicates merge by weight sum and self-loops are dropped.
pub fn parse_edge_list(text: &str) -> Result<DynGraph, ParseError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if let Some(c) = line.strip_prefix('#').or_else(|| line.strip_prefix('%')) {
            let toks: Vec<&str> = c.split_whitespace().collect();
            if toks.len() == 2 && toks[0] == "n" {
                declared = Some(num::<usize>(toks[1], ln, "vertex count")?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 || toks.len() > 3 {
            return Err(syntax(ln, "expected `u v [w]`"));
        }
        let u: VertexId = num(toks[0], ln, "vertex")?;
        let v: VertexId = num(toks[1], ln, "vertex")?;
        let w: Weight = match toks.get(2) {
            Some(t) => num(t, ln, "weight")?,
            None => 1,
        };
        edges.push((ln, u, v, w));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(_, u, v, _)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = DynGraph::new(n);
    for (ln, u, v, w) in edges {
        if u == v || w == 0 {
            continue;
        }
        g.insert_edge(u, v, w).map_err(|source| ParseError::Graph { line: ln, source })?;
    }
    Ok(g)
}

pub fn write_metis(g: &DynGraph) -> String {
    let mut out = String::new();
    let weighted = g.edges().any(|(_, _, w)| w != 1);
    let _ = writeln!(
        out,
        "{} {}{}",
        g.num_vertices(),
        g.num_edges(),
        if weighted { " 1" } else { "" }
    );
    for x in 0..g.num_vertices() {
        let mut nb: Vec<(VertexId, Weight)> = g.neighbors(x).collect();
        nb.sort_unstable();
        let toks: Vec<String> = nb
            .into_iter()
            .map(|(y, w)| if weighted { format!("{} {w}", y + 1) } else { (y + 1).to_string() })
            .collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_edge_list(g: &DynGraph) -> String {
    let mut out = format!("# n {}\n", g.num_vertices());
    let mut edges: Vec<_> = g.edges().collect();
    edges.sort_unstable();
    for (u, v, w) in edges {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Insert,
    Delete,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Insert => '+',
            Op::Delete => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Update {
    pub time: u64,
    pub op: Op,
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
    /// Source line, 0 for generated updates.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UpdateStream {
    pub n: usize,
    pub updates: Vec<Update>,
}

impl UpdateStream {
    /// Index ranges of maximal runs of equal timestamps.
    pub fn batches(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.updates.len() {
            if i == self.updates.len() || self.updates[i].time != self.updates[start].time {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for up in &self.updates {
            let _ = write!(out, "{} {} {} {}", up.time, up.op.symbol(), up.u, up.v);
            if up.op == Op::Insert {
                let _ = write!(out, " {}", up.w);
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_stream(path: &Path) -> Result<UpdateStream, ParseError> {
    parse_stream_str(&std::fs::read_to_string(path)?)
}

/// Header `n <count>`, then `t +|- u v [w]` lines with nondecreasing `t`.
pub fn parse_stream_str(text: &str) -> Result<UpdateStream, ParseError> {
    let mut n = None;
    let mut updates: Vec<Update> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some(count) = n else {
            if toks.len() != 2 || toks[0] != "n" {
                return Err(syntax(ln, "stream must start with `n <count>`"));
            }
            n = Some(num::<usize>(toks[1], ln, "vertex count")?);
            continue;
        };
        if toks.len() < 4 || toks.len() > 5 {
            return Err(syntax(ln, "expected `t +|- u v [w]`"));
        }
        let time: u64 = num(toks[0], ln, "timestamp")?;
        if updates.last().is_some_and(|p| p.time > time) {
            return Err(syntax(ln, "timestamps must be nondecreasing"));
        }
        let op = match toks[1] {
            "+" => Op::Insert,
            "-" => Op::Delete,
            o => return Err(syntax(ln, format!("unknown op `{o}`"))),
        };
        let u: VertexId = num(toks[2], ln, "vertex")?;
        let v: VertexId = num(toks[3], ln, "vertex")?;
        for x in [u, v] {
            if x >= count {
                return Err(syntax(ln, format!("vertex {x} out of range for n = {count}")));
            }
        }
        if u == v {
            return Err(syntax(ln, "self-loop"));
        }
        let w: Weight = match toks.get(4) {
            Some(t) => num(t, ln, "weight")?,
            None => 1,
        };
        if w == 0 {
            return Err(syntax(ln, "weight must be positive"));
        }
        updates.push(Update { time, op, u, v, w, line: ln });
    }
    Ok(UpdateStream { n: n.unwrap_or(0), updates })
}
