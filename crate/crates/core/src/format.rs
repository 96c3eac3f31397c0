//! The `.uhg` text format.
//!
//! ```text
//! # optional comment lines
//! n k m
//! a_1 … a_k      (m lines, labels increasing, lines in colex order)
//! ```

use std::fs;
use std::path::Path;

use crate::combinatorics::binomial;
use crate::hypercore::{UniformHypergraph, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

pub fn to_uhg(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.k(), h.edge_count());
    for e in h.edges() {
        let labels: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_uhg(text: &str) -> Result<UniformHypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing header `n k m`".into(),
    })?;
    let fields = parse_numbers(header_line, header)?;
    let &[n, k, m] = fields.as_slice() else {
        return Err(parse_err(header_line, "header must be `n k m`"));
    };
    if n > MAX_VERTICES {
        return Err(parse_err(header_line, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    if k < 1 || k > n {
        return Err(parse_err(header_line, format!("k = {k} must satisfy 1 ≤ k ≤ n")));
    }
    if m as u64 > binomial(n, k) {
        return Err(parse_err(header_line, format!("m = {m} exceeds C({n}, {k})")));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(parse_err(line, format!("unexpected line after the {m} declared edges")));
        }
        let labels = parse_numbers(line, content)?;
        if labels.len() != k {
            return Err(parse_err(line, format!("expected {k} labels, found {}", labels.len())));
        }
        if let Some(&v) = labels.iter().find(|&&v| v < 1 || v > n) {
            return Err(parse_err(line, format!("label {v} outside 1..={n}")));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(line, "labels must be strictly increasing"));
        }
        let e = VertexSet::from_vertices(labels.iter().copied())?;
        if let Some(&prev) = edges.last() {
            if e <= prev {
                return Err(parse_err(line, "edges must be distinct and in colex order"));
            }
        }
        edges.push(e);
    }
    if edges.len() < m {
        return Err(parse_err(
            last_line + 1,
            format!("expected {m} edges, found {} (truncated file?)", edges.len()),
        ));
    }
    Ok(UniformHypergraph::from_sorted(n, k, edges))
}

pub fn read_uhg(path: impl AsRef<Path>) -> Result<UniformHypergraph> {
    parse_uhg(&fs::read_to_string(path)?)
}

pub fn write_uhg(path: impl AsRef<Path>, h: &UniformHypergraph) -> Result<()> {
    fs::write(path, to_uhg(h))?;
    Ok(())
}

fn parse_numbers(line: usize, content: &str) -> Result<Vec<usize>> {
    content
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}
