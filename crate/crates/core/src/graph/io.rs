//! Text formats.
//!
//! Edge list: the first non-comment line is `n m`, followed by exactly `m`
//! lines `u v` with `u < v`, 0-indexed. Lines starting with `#` are comments.
//! Lines end with LF.
//!
//! Edit script: one op per line, `+ u v` (add) or `- u v` (remove), applied
//! top to bottom. `#` comment lines are allowed.

use std::fmt::Write as _;

use thiserror::Error;

use super::{EdgeOp, EditScript, Graph, OpKind};
use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `n m` header")]
    MissingHeader,
    #[error("expected two non-negative integers, found {0:?}")]
    BadPair(String),
    #[error("expected `+ u v` or `- u v`, found {0:?}")]
    BadOp(String),
    #[error("carriage return in input (LF line endings required)")]
    CarriageReturn,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("edge endpoints must satisfy u < v, found {0} {1}")]
    Unordered(usize, usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("header declares {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError {
        line,
        kind: ParseErrorKind::BadPair(s.to_string()),
    };
    let mut it = s.split_ascii_whitespace();
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    if let Some(i) = text.split('\n').position(|l| l.contains('\r')) {
        return Err(ParseError {
            line: i + 1,
            kind: ParseErrorKind::CarriageReturn,
        });
    }
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let (n, m) = parse_pair(hl, header)?;
    let mut g = Graph::empty(n);
    let mut found = 0;
    for (line, s) in lines {
        let (u, v) = parse_pair(line, s)?;
        let err = |kind| Err(ParseError { line, kind });
        if u == v {
            return err(ParseErrorKind::SelfLoop(u));
        }
        if let Some(&x) = [u, v].iter().find(|&&x| x >= n) {
            return err(ParseErrorKind::OutOfRange { vertex: x, n });
        }
        if u > v {
            return err(ParseErrorKind::Unordered(u, v));
        }
        if g.has_edge(u, v) {
            return err(ParseErrorKind::DuplicateEdge(Edge::new(u, v)));
        }
        g.insert_unchecked(Edge::new(u, v));
        found += 1;
    }
    if found != m {
        return Err(ParseError {
            line: 0,
            kind: ParseErrorKind::EdgeCount { expected: m, found },
        });
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
    }
    out
}

pub fn parse_script(text: &str) -> Result<EditScript, ParseError> {
    let mut script = EditScript::new();
    for (line, s) in content_lines(text) {
        if s.contains('\r') {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::CarriageReturn,
            });
        }
        let bad = || ParseError {
            line,
            kind: ParseErrorKind::BadOp(s.to_string()),
        };
        let kind = match s.as_bytes().first() {
            Some(b'+') => OpKind::Add,
            Some(b'-') => OpKind::Remove,
            _ => return Err(bad()),
        };
        let rest = &s[1..];
        if !rest.starts_with(' ') {
            return Err(bad());
        }
        let (u, v) = parse_pair(line, rest).map_err(|_| bad())?;
        let edge = Edge::try_new(u, v).map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::SelfLoop(u),
        })?;
        script.push(EdgeOp::new(kind, edge));
    }
    Ok(script)
}

pub fn write_script(s: &EditScript) -> String {
    let mut out = String::new();
    for op in s {
        writeln!(out, "{op}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2\n# x\n0 2\n").unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(write_edge_list(&g), "3 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn empty_graph_file() {
        let g = parse_edge_list("0 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_edge_list("3 1\n1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::SelfLoop(1));
        assert_eq!(e.to_string(), "line 2: self-loop at vertex 1");

        let e = parse_edge_list("3 1\n2 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unordered(2, 1));
        let e = parse_edge_list("3 2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::EdgeCount {
                expected: 2,
                found: 1
            }
        );
        let e = parse_edge_list("3 1\r\n0 1\r\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::CarriageReturn);
        assert!(parse_edge_list("# only comments\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn scripts() {
        let s = parse_script("+ 0 2\n# c\n- 1 0\n").unwrap();
        assert_eq!(s.ops(), &[EdgeOp::add(0, 2), EdgeOp::remove(0, 1)]);
        assert_eq!(write_script(&s), "+ 0 2\n- 0 1\n");
        assert!(parse_script("* 0 1\n").is_err());
        assert!(parse_script("+0 1\n").is_err());
        assert_eq!(
            parse_script("+ 3 3\n").unwrap_err().kind,
            ParseErrorKind::SelfLoop(3)
        );
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..25, raw in proptest::collection::vec((0usize..25, 0usize..25), 0..60)) {
            let mut g = Graph::empty(n);
            for (a, b) in raw {
                let (a, b) = (a % n, b % n);
                if a != b && !g.has_edge(a, b) {
                    g.insert_unchecked(Edge::new(a, b));
                }
            }
            let text = write_edge_list(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
        }
    }
}
