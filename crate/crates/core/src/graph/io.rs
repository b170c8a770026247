//! Plain-text graph formats.
//!
//! `edge_list`: first line `n`, then one `u v w` line per edge with 0-based
//! ids. Lines starting with `#` are comments.
//!
//! `dimacs`: `p sp n m` header and `a u v w` arc lines with 1-based ids;
//! `c` lines are comments. Each undirected edge is written once. On input a
//! reverse arc repeating an edge with the same weight is accepted and merged.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge_list" | "edgelist" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(Error::Parameter(format!("unknown graph format `{other}`"))),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::EdgeList => "edge_list",
            GraphFormat::Dimacs => "dimacs",
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    seen: HashMap<(usize, usize), f64>,
    merge_reverse: bool,
}

impl Builder {
    fn add(&mut self, line: usize, u: usize, v: usize, w: f64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(parse_err(
                line,
                format!("vertex id out of range for n = {}", self.n),
            ));
        }
        if u == v {
            return Err(parse_err(line, "self-loop"));
        }
        if !(w > 0.0) || !w.is_finite() {
            return Err(parse_err(line, format!("weight must be positive, got {w}")));
        }
        let key = (u.min(v), u.max(v));
        if let Some(&prev) = self.seen.get(&key) {
            if self.merge_reverse && prev == w {
                return Ok(());
            }
            return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
        }
        self.seen.insert(key, w);
        self.edges.push((u, v, w));
        Ok(())
    }

    fn finish(self) -> Result<Graph> {
        Graph::new(self.n, self.edges)
    }
}

pub fn read_graph<R: BufRead>(reader: R, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => read_edge_list(reader),
        GraphFormat::Dimacs => read_dimacs(reader),
    }
}

pub fn read_graph_str(text: &str, format: GraphFormat) -> Result<Graph> {
    read_graph(text.as_bytes(), format)
}

fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut builder: Option<Builder> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut toks = text.split_whitespace();
        match builder.as_mut() {
            None => {
                let n: usize = field(toks.next(), line_no, "vertex count")?;
                if toks.next().is_some() {
                    return Err(parse_err(line_no, "header must contain only n"));
                }
                builder = Some(Builder {
                    n,
                    edges: Vec::new(),
                    seen: HashMap::new(),
                    merge_reverse: false,
                });
            }
            Some(b) => {
                let u = field(toks.next(), line_no, "source id")?;
                let v = field(toks.next(), line_no, "target id")?;
                let w = field(toks.next(), line_no, "weight")?;
                if toks.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens"));
                }
                b.add(line_no, u, v, w)?;
            }
        }
    }
    builder
        .ok_or_else(|| parse_err(0, "missing vertex count header"))?
        .finish()
}

fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut builder: Option<Builder> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        let mut toks = text.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if builder.is_some() {
                    return Err(parse_err(line_no, "repeated problem line"));
                }
                match toks.next() {
                    Some("sp") => {}
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("expected `p sp`, found {other:?}"),
                        ))
                    }
                }
                let n: usize = field(toks.next(), line_no, "vertex count")?;
                let _m: usize = field(toks.next(), line_no, "arc count")?;
                builder = Some(Builder {
                    n,
                    edges: Vec::new(),
                    seen: HashMap::new(),
                    merge_reverse: true,
                });
            }
            Some("a") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "arc before problem line"))?;
                let u: usize = field(toks.next(), line_no, "source id")?;
                let v: usize = field(toks.next(), line_no, "target id")?;
                let w: f64 = field(toks.next(), line_no, "weight")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line_no, "dimacs ids are 1-based"));
                }
                b.add(line_no, u - 1, v - 1, w)?;
            }
            Some(other) => {
                return Err(parse_err(line_no, format!("unknown line type `{other}`")))
            }
        }
    }
    builder
        .ok_or_else(|| parse_err(0, "missing problem line"))?
        .finish()
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W, format: GraphFormat) -> Result<()> {
    match format {
        GraphFormat::EdgeList => {
            writeln!(out, "{}", g.n())?;
            for e in g.edges() {
                writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
            }
        }
        GraphFormat::Dimacs => {
            writeln!(out, "p sp {} {}", g.n(), g.m())?;
            for e in g.edges() {
                writeln!(out, "a {} {} {}", e.u + 1, e.v + 1, e.w)?;
            }
        }
    }
    Ok(())
}

pub fn write_graph_string(g: &Graph, format: GraphFormat) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf, format).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
