//! Edge-list text format.
//!
//! One `u v` pair per line; `#` starts a comment; blank lines are skipped.
//! A line with a single token declares a vertex without edges, which lets
//! derived graphs with isolated vertices round-trip.

use std::collections::BTreeSet;

use super::{Edge, Graph};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokens_with_columns(content);
        let err = |column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        match tokens.as_slice() {
            [] => {}
            [(_, v)] => {
                vertices.insert(v.to_string());
            }
            [(_, a), (col, b)] => {
                if a == b {
                    return Err(err(*col, format!("self-loop at vertex `{a}`")));
                }
                let e = Edge::new(*a, *b)?;
                if !edges.insert(e.clone()) {
                    return Err(err(1, format!("duplicate edge {e}")));
                }
                vertices.insert(a.to_string());
                vertices.insert(b.to_string());
            }
            [_, _, (col, extra), ..] => {
                return Err(err(
                    *col,
                    format!("unexpected token `{extra}`; expected `u v`"),
                ))
            }
        }
    }
    Graph::with_vertices(vertices, edges)
}

/// 1-based character columns of whitespace-separated tokens.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((scol, sbyte))) => {
                out.push((scol, &line[sbyte..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, sbyte)) = start {
        out.push((scol, &line[sbyte..]));
    }
    out
}

/// Sorted edge lines, then isolated vertices as single-token lines.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    for v in g.isolated_vertices() {
        out.push_str(v);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let g = parse_edge_list("# header\nu v\n\n  v   w  # trailing\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge("w", "v"));
        assert!(g.validate().is_ok());
    }

    #[test]
    fn reports_line_and_column() {
        match parse_edge_list("a b\nb c d\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("a b\n\n  x x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_edge_list("a b\nb a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn single_tokens_declare_isolated_vertices() {
        let g = parse_edge_list("a b\nc\n").unwrap();
        assert_eq!(g.isolated_vertices(), vec!["c"]);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn write_is_canonical() {
        let g = parse_edge_list("c b\nb a\n").unwrap();
        assert_eq!(write_edge_list(&g), "a b\nb c\n");
    }
}
