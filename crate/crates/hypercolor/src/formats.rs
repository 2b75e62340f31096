//! Text formats for hypergraphs and list assignments, and the JSON form of
//! polynomials.
//!
//! Hypergraph files start with `n m`, followed by `m` lines of ascending
//! vertex indices. List files start with `n k U`, followed by `n` lines of
//! `k` ascending colors below `U`. In both, lines starting with `#` and
//! blank lines are skipped.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use hypercolor_core::{Hypergraph, ListAssignment, Polynomial};
use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("expected {expected} {what} lines, found {found}")]
    LineCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("missing header line")]
    MissingHeader,
    #[error("polynomial JSON must be an array of decimal strings")]
    Polynomial,
    #[error(transparent)]
    Invalid(#[from] hypercolor_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn numbers<T: FromStr>(line: usize, text: &str) -> Result<Vec<T>, FormatError> {
    text.split_whitespace()
        .map(|token| {
            token.parse().map_err(|_| FormatError::Malformed {
                line,
                reason: format!("`{token}` is not a nonnegative integer"),
            })
        })
        .collect()
}

fn header(line: usize, text: &str, fields: usize, names: &str) -> Result<Vec<usize>, FormatError> {
    let values = numbers(line, text)?;
    if values.len() != fields {
        return Err(FormatError::Malformed {
            line,
            reason: format!("header must be `{names}`"),
        });
    }
    Ok(values)
}

/// Rejects lines whose indices are not strictly ascending. Repeats are left
/// to the core validation so they report as repeated vertices.
fn check_ascending(line: usize, values: &[usize], what: &str) -> Result<(), FormatError> {
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(FormatError::Malformed {
            line,
            reason: format!("{what} must be listed in ascending order"),
        });
    }
    Ok(())
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or(FormatError::MissingHeader)?;
    let head = header(line, head, 2, "n m")?;
    let (n, m) = (head[0], head[1]);
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let edge: Vec<usize> = numbers(line, text)?;
        check_ascending(line, &edge, "vertices")?;
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(FormatError::LineCount {
            what: "edge",
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Hypergraph::new(n, edges)?)
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.m());
    for edge in h.edges() {
        out.push_str(&join(edge));
        out.push('\n');
    }
    out
}

pub fn parse_lists(text: &str) -> Result<ListAssignment, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or(FormatError::MissingHeader)?;
    let head = header(line, head, 3, "n k U")?;
    let (n, k, universe) = (head[0], head[1], head[2]);
    let mut colors = Vec::with_capacity(n);
    for (line, text) in lines {
        let list: Vec<usize> = numbers(line, text)?;
        check_ascending(line, &list, "colors")?;
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(FormatError::Malformed {
                line,
                reason: "repeated color".into(),
            });
        }
        if list.len() != k {
            return Err(FormatError::Malformed {
                line,
                reason: format!("expected {k} colors, found {}", list.len()),
            });
        }
        colors.push(list);
    }
    if colors.len() != n {
        return Err(FormatError::LineCount {
            what: "list",
            expected: n,
            found: colors.len(),
        });
    }
    Ok(ListAssignment::from_colors(universe, k, &colors)?)
}

pub fn serialize_lists(l: &ListAssignment) -> String {
    let mut out = format!("{} {} {}\n", l.n(), l.k(), l.universe());
    for v in 0..l.n() {
        out.push_str(&join(&l.colors(v)));
        out.push('\n');
    }
    out
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Coefficients as decimal strings, index = power of `k`.
pub fn polynomial_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn polynomial_from_json(value: &Value) -> Result<Polynomial, FormatError> {
    let items = value.as_array().ok_or(FormatError::Polynomial)?;
    let coeffs = items
        .iter()
        .map(|item| {
            item.as_str()
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or(FormatError::Polynomial)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, FormatError> {
    parse_hypergraph(&read(path)?)
}

pub fn read_lists(path: &Path) -> Result<ListAssignment, FormatError> {
    parse_lists(&read(path)?)
}
