//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments anywhere
//! k n m
//! v1 v2 ... vk
//! ...            (m edge lines)
//! ```
//!
//! Everything after a `#` on a line is ignored, as are blank lines.

use crate::hypergraph::{Edge, HypergraphError, KHypergraph, Vertex};
use std::fmt::Write as _;

pub fn parse(text: &str) -> Result<KHypergraph, HypergraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(HypergraphError::Parse {
        line: 1,
        message: "missing header line `k n m`".into(),
    })?;
    let fields = numbers(header_line, header)?;
    let [k, n, m] = fields[..] else {
        return Err(HypergraphError::Parse {
            line: header_line,
            message: format!("header needs 3 fields `k n m`, found {}", fields.len()),
        });
    };
    let (k, n, m) = (k as usize, n as usize, m as usize);
    if k < 2 {
        return Err(HypergraphError::Parse {
            line: header_line,
            message: format!("uniformity must be at least 2, got {k}"),
        });
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, body) = lines.next().ok_or(HypergraphError::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        let vertices: Vec<Vertex> = numbers(line, body)?;
        if vertices.len() != k {
            return Err(HypergraphError::Parse {
                line,
                message: format!("edge has {} vertices, expected {k}", vertices.len()),
            });
        }
        let edge = Edge::new(vertices.iter().copied());
        if edge.len() != k {
            return Err(HypergraphError::Parse {
                line,
                message: "edge repeats a vertex".into(),
            });
        }
        if let Some(v) = edge.iter().find(|&v| v as usize >= n) {
            return Err(HypergraphError::Parse {
                line,
                message: format!("vertex {v} out of range [0, {n})"),
            });
        }
        edges.push(edge);
    }
    if let Some((line, _)) = lines.next() {
        return Err(HypergraphError::Parse {
            line,
            message: format!("unexpected content after {m} edges"),
        });
    }
    Ok(KHypergraph::from_valid_edges(n, k, edges))
}

fn numbers(line: usize, body: &str) -> Result<Vec<Vertex>, HypergraphError> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<Vertex>().map_err(|_| HypergraphError::Parse {
                line,
                message: format!("not a non-negative integer: `{tok}`"),
            })
        })
        .collect()
}

pub fn write(graph: &KHypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", graph.k(), graph.n(), graph.edge_count()).unwrap();
    for e in graph.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# a path\n3 5 2\n0 1 2 # first\n\n2 3 4\n";
        let g = parse(text).unwrap();
        assert_eq!((g.k(), g.n(), g.edge_count()), (3, 5, 2));
    }

    #[test]
    fn round_trip() {
        let g = KHypergraph::new(6, 3, [vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap();
        assert_eq!(parse(&write(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("3 5 2\n0 1 2\n0 1 x\n").unwrap_err();
        assert!(matches!(err, HypergraphError::Parse { line: 3, .. }), "{err}");
        let err = parse("3 5 2\n0 1 2\n0 1 9\n").unwrap_err();
        assert!(matches!(err, HypergraphError::Parse { line: 3, .. }), "{err}");
        let err = parse("3 5\n").unwrap_err();
        assert!(matches!(err, HypergraphError::Parse { line: 1, .. }), "{err}");
        let err = parse("3 5 1\n0 1\n").unwrap_err();
        assert!(matches!(err, HypergraphError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn missing_and_extra_lines() {
        assert!(parse("3 5 2\n0 1 2\n").is_err());
        assert!(parse("3 5 1\n0 1 2\n1 2 3\n").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = parse("3 5 2\n0 1 2\n2 1 0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
