//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`, ASCII decimal.

use std::io::{BufRead, Write};

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: pair ({u}, {v}) is not written with u < v")]
    NonCanonical { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), EdgeListError> {
    let mut it = line.split_ascii_whitespace();
    let syntax = |msg: &str| EdgeListError::Syntax {
        line: lineno,
        msg: msg.to_string(),
    };
    let a = it.next().ok_or_else(|| syntax("expected two integers"))?;
    let b = it.next().ok_or_else(|| syntax("expected two integers"))?;
    if it.next().is_some() {
        return Err(syntax("trailing tokens"));
    }
    let a = a
        .parse()
        .map_err(|_| syntax("not a non-negative integer"))?;
    let b = b
        .parse()
        .map_err(|_| syntax("not a non-negative integer"))?;
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, EdgeListError> {
    let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (hline, header) = lines.next().ok_or(EdgeListError::Syntax {
        line: 1,
        msg: "missing header".into(),
    })?;
    let (n, m) = parse_pair(&header?, hline)?;
    let mut pairs = Vec::with_capacity(m);
    let mut noncanonical = None;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(&line?, lineno)?;
        if u > v && noncanonical.is_none() {
            noncanonical = Some(EdgeListError::NonCanonical { line: lineno, u, v });
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(EdgeListError::EdgeCount {
            declared: m,
            found: pairs.len(),
        });
    }
    // Range, loop and duplicate violations are reported exactly as `Graph::new` does.
    let g = Graph::new(n, &pairs)?;
    match noncanonical {
        Some(err) => Err(err),
        None => Ok(g),
    }
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    read_edge_list(text.as_bytes())
}
