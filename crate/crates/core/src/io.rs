//! Text codecs: graph6, DIMACS `.col`, and plain edge lists.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: byte {byte} at offset {offset} outside 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("graph6: padding bits must be zero")]
    Padding,
    #[error("graph6: cannot encode {0} vertices")]
    TooLarge(usize),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// Largest order representable by the 8-byte graph6 length form.
pub const GRAPH6_MAX_N: usize = (1 << 36) - 1;

fn encode_n(n: usize, out: &mut Vec<u8>) -> Result<(), FormatError> {
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| 63 + ((n >> (6 * k)) & 63) as u8));
    } else if n <= GRAPH6_MAX_N {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| 63 + ((n >> (6 * k)) & 63) as u8));
    } else {
        return Err(FormatError::TooLarge(n));
    }
    Ok(())
}

pub fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out)?;
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

pub fn decode_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(FormatError::ByteOutOfRange { offset, byte });
    }
    let six = |b: u8| (b - 63) as usize;
    let take = |count: usize, from: usize| -> Result<usize, FormatError> {
        let digits = bytes.get(from..from + count).ok_or(FormatError::Length {
            expected: from + count,
            found: bytes.len(),
        })?;
        Ok(digits.iter().fold(0, |acc, &b| (acc << 6) | six(b)))
    };
    let (n, header) = match bytes {
        [] => return Err(FormatError::Length { expected: 1, found: 0 }),
        [126, 126, ..] => (take(6, 2)?, 8),
        [126, ..] => (take(3, 1)?, 4),
        [b, ..] => (six(*b), 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = header + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(FormatError::Length {
            expected,
            found: bytes.len(),
        });
    }
    let body = &bytes[header..];
    let bit = |k: usize| (six(body[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if (bits..body.len() * 6).any(bit) {
        return Err(FormatError::Padding);
    }
    Graph::new(n, &edges).map_err(|source| FormatError::Graph { line: 1, source })
}

/// A parsed DIMACS file and any non-fatal findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<DimacsGraph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let rest: Vec<&str> = fields.collect();
        let numbers = || -> Result<Vec<usize>, FormatError> {
            rest.iter()
                .map(|f| f.parse().map_err(|_| line_err(line, format!("bad number {f:?}"))))
                .collect()
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(line_err(line, "second problem line"));
                }
                if rest.len() != 3 || !matches!(rest[0], "edge" | "col") {
                    return Err(line_err(line, "expected \"p edge <n> <m>\""));
                }
                let n = rest[1].parse().map_err(|_| line_err(line, "bad vertex count"))?;
                let m = rest[2].parse().map_err(|_| line_err(line, "bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| line_err(line, "edge before problem line"))?;
                let ends = numbers()?;
                let [u, v] = ends[..] else {
                    return Err(line_err(line, "expected \"e <u> <v>\""));
                };
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(line_err(line, format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(FormatError::Graph {
                        line,
                        source: GraphError::Loop(u - 1),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(line_err(line, format!("unknown record {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| line_err(text.lines().count().max(1), "missing problem line"))?;
    let graph = Graph::new(n, &edges).map_err(|source| FormatError::Graph { line: 0, source })?;
    if graph.edge_count() != m {
        warnings.push(format!(
            "problem line declares {m} edges, found {} distinct",
            graph.edge_count()
        ));
    }
    Ok(DimacsGraph { graph, warnings })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("write to String");
    }
    out
}

/// Plain edge list: first non-comment line is the vertex count, then one
/// `u v` pair (0-based) per line. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let nums: Vec<usize> = content
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| line_err(line, format!("bad number {f:?}"))))
            .collect::<Result<_, _>>()?;
        match (n, nums.as_slice()) {
            (None, [count]) => n = Some(*count),
            (None, _) => return Err(line_err(line, "expected the vertex count")),
            (Some(count), [u, v]) => {
                for w in [*u, *v] {
                    if w >= count {
                        return Err(FormatError::Graph {
                            line,
                            source: GraphError::OutOfRange { vertex: w, n: count },
                        });
                    }
                }
                if u == v {
                    return Err(FormatError::Graph {
                        line,
                        source: GraphError::Loop(*u),
                    });
                }
                edges.push((*u, *v));
            }
            (Some(_), _) => return Err(line_err(line, "expected \"u v\"")),
        }
    }
    let n = n.ok_or_else(|| line_err(1, "missing vertex count"))?;
    Graph::new(n, &edges).map_err(|source| FormatError::Graph { line: 0, source })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("write to String");
    }
    out
}
