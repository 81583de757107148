//! Text formats.
//!
//! Instance:
//!
//! ```text
//! p edge <n> <m>
//! e <u> <v> [c1 c2 ...]
//! ```
//!
//! Vertices are 0-based; lists are optional but must be present on every
//! edge line or on none. Lines starting with `c` and blank lines are ignored.
//!
//! Coloring: one line per edge, `<edge-index> <color|->`.
//!
//! Trace: one JSON object per line.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::engine::TraceRecord;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::lists::{Color, ColorSet, ListAssignment};

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Multigraph,
    pub lists: Option<ListAssignment>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {token:?}")))
}

fn parse_color(line: usize, token: &str) -> Result<Color> {
    let v: u32 = parse_num(line, token, "a positive color")?;
    Color::new(v).ok_or_else(|| parse_err(line, "colors must be positive"))
}

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `p edge` header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "edge" {
        return Err(parse_err(hline, "header must be `p edge <n> <m>`"));
    }
    let n: usize = parse_num(hline, tokens[2], "vertex count")?;
    let m: usize = parse_num(hline, tokens[3], "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut lists: Vec<ColorSet> = Vec::with_capacity(m);
    let mut with_list = 0;
    for (line, body) in lines {
        let mut tokens = body.split_whitespace();
        if tokens.next() != Some("e") {
            return Err(parse_err(line, "expected an `e` line"));
        }
        let u: usize = parse_num(line, tokens.next().unwrap_or(""), "vertex")?;
        let v: usize = parse_num(line, tokens.next().unwrap_or(""), "vertex")?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(line, "loops are not allowed"));
        }
        let list = tokens
            .map(|t| parse_color(line, t))
            .collect::<Result<ColorSet>>()?;
        if !list.is_empty() {
            with_list += 1;
        }
        edges.push((u, v));
        lists.push(list);
        if edges.len() > m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
    }
    if edges.len() != m {
        return Err(parse_err(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    if with_list != 0 && with_list != m {
        return Err(Error::MixedListPresence);
    }
    let graph = Multigraph::build(n, &edges)?;
    let lists = if with_list == m && m > 0 {
        Some(ListAssignment::new(&graph, lists)?)
    } else {
        None
    };
    Ok(Instance { graph, lists })
}

/// Canonical form: header, then edges in id order, lists ascending.
pub fn write_instance(g: &Multigraph, lists: Option<&ListAssignment>) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        let _ = write!(out, "e {} {}", u.0, v.0);
        if let Some(l) = lists {
            for c in l.list(e) {
                let _ = write!(out, " {c}");
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_coloring(colors: &[Option<Color>]) -> String {
    let mut out = String::new();
    for (i, c) in colors.iter().enumerate() {
        match c {
            Some(c) => writeln!(out, "{i} {c}"),
            None => writeln!(out, "{i} -"),
        }
        .expect("writing to a String cannot fail");
    }
    out
}

/// Reads a coloring for a graph with `m` edges. Every edge must appear
/// exactly once.
pub fn parse_coloring(text: &str, m: usize) -> Result<Vec<Option<Color>>> {
    let mut colors: Vec<Option<Option<Color>>> = vec![None; m];
    for (line, body) in content_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected `<edge> <color|->`"));
        }
        let e: usize = parse_num(line, tokens[0], "edge index")?;
        if e >= m {
            return Err(parse_err(
                line,
                format!("edge {e} out of range for m = {m}"),
            ));
        }
        if colors[e].is_some() {
            return Err(parse_err(line, format!("edge {e} listed twice")));
        }
        colors[e] = Some(match tokens[1] {
            "-" => None,
            t => Some(parse_color(line, t)?),
        });
    }
    let last = text.lines().count().max(1);
    colors
        .into_iter()
        .enumerate()
        .map(|(e, c)| c.ok_or_else(|| parse_err(last, format!("edge {e} missing from coloring"))))
        .collect()
}

pub fn write_trace<W: Write>(mut out: W, records: &[TraceRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
