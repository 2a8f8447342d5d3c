//! Plain-text graph files.
//!
//! ```text
//! # comment
//! bipartite 2 3
//! e 0 0
//! e 1 2
//! ```
//!
//! The header is `bipartite <n_a> <n_b>` or `graph <n>`; each edge line is
//! `e <u> <v>`, with `u` on side A and `v` on side B for bipartite graphs.
//! Indices are 0-based. Blank lines and lines starting with `#` are skipped.
//! Serialization writes the header and the sorted, duplicate-free edge list.

use std::fmt::Write as _;

use mtcap_core::{BipartiteGraph, GeneralGraph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Bipartite(BipartiteGraph),
    General(GeneralGraph),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn number(tok: &Token, line: usize) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| err(line, tok.column, format!("expected a non-negative integer, found `{}`", tok.text)))
}

enum Header {
    Bipartite(usize, usize),
    General(usize),
}

/// Parses either kind of graph file.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        if toks.is_empty() || toks[0].text.starts_with('#') {
            continue;
        }
        match &header {
            None => {
                header = Some(match toks[0].text {
                    "bipartite" => {
                        if toks.len() != 3 {
                            return Err(err(line, toks[0].column, "expected `bipartite <n_a> <n_b>`"));
                        }
                        Header::Bipartite(number(&toks[1], line)?, number(&toks[2], line)?)
                    }
                    "graph" => {
                        if toks.len() != 2 {
                            return Err(err(line, toks[0].column, "expected `graph <n>`"));
                        }
                        Header::General(number(&toks[1], line)?)
                    }
                    other => {
                        return Err(err(
                            line,
                            toks[0].column,
                            format!("expected header `bipartite` or `graph`, found `{other}`"),
                        ))
                    }
                });
            }
            Some(h) => {
                if toks[0].text != "e" {
                    return Err(err(line, toks[0].column, format!("expected `e`, found `{}`", toks[0].text)));
                }
                if toks.len() != 3 {
                    let col = toks.get(3).map_or(raw.len() + 1, |t| t.column);
                    return Err(err(line, col, "expected `e <u> <v>`"));
                }
                let u = number(&toks[1], line)?;
                let v = number(&toks[2], line)?;
                let (bu, bv) = match *h {
                    Header::Bipartite(n_a, n_b) => (n_a, n_b),
                    Header::General(n) => (n, n),
                };
                if u >= bu {
                    return Err(err(line, toks[1].column, format!("endpoint {u} out of range (bound {bu})")));
                }
                if v >= bv {
                    return Err(err(line, toks[2].column, format!("endpoint {v} out of range (bound {bv})")));
                }
                if matches!(h, Header::General(_)) && u == v {
                    return Err(err(line, toks[1].column, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    match header {
        None => Err(err(last_line.max(1), 1, "missing header")),
        Some(Header::Bipartite(n_a, n_b)) => Ok(ParsedGraph::Bipartite(
            BipartiteGraph::new(n_a, n_b, edges).expect("edges were range-checked"),
        )),
        Some(Header::General(n)) => Ok(ParsedGraph::General(
            GeneralGraph::new(n, edges).expect("edges were range-checked"),
        )),
    }
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, ParseError> {
    match parse_graph(text)? {
        ParsedGraph::Bipartite(g) => Ok(g),
        ParsedGraph::General(_) => Err(err(1, 1, "expected a bipartite graph")),
    }
}

pub fn parse_general(text: &str) -> Result<GeneralGraph, ParseError> {
    match parse_graph(text)? {
        ParsedGraph::General(g) => Ok(g),
        ParsedGraph::Bipartite(_) => Err(err(1, 1, "expected a general graph")),
    }
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut out = format!("bipartite {} {}\n", g.n_a(), g.n_b());
    for &(a, b) in g.edges() {
        writeln!(out, "e {a} {b}").expect("writing to a string");
    }
    out
}

pub fn write_general(g: &GeneralGraph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").expect("writing to a string");
    }
    out
}

pub fn write_graph(g: &ParsedGraph) -> String {
    match g {
        ParsedGraph::Bipartite(g) => write_bipartite(g),
        ParsedGraph::General(g) => write_general(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let g = parse_bipartite("bipartite 2 2\ne 0 0\ne 1 1").unwrap();
        assert_eq!(g.edges(), &[(0, 0), (1, 1)]);
        let k3 = parse_general("graph 3\ne 0 1\ne 1 2\ne 2 0").unwrap();
        assert_eq!(k3, GeneralGraph::complete(3));
    }

    #[test]
    fn reports_locations() {
        let e = parse_graph("bipartite 1 1\ne 0 5").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse_graph("# hi\n\nbipartite 1 x").unwrap_err();
        assert_eq!((e.line, e.column), (3, 13));
        let e = parse_graph("graph 2\ne 1 1").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph("graph 2\nf 0 1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_graph("graph 2\ne 0 1 1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        assert!(parse_graph("# only comments\n").is_err());
        assert!(parse_graph("digraph 2").is_err());
    }

    #[test]
    fn comments_and_duplicates() {
        let g = parse_bipartite("# c\nbipartite 2 2\n  # indented comment\ne 1 0\ne 1 0\n\ne 0 1\n").unwrap();
        assert_eq!(write_bipartite(&g), "bipartite 2 2\ne 0 1\ne 1 0\n");
    }

    #[test]
    fn round_trip() {
        let g = BipartiteGraph::cycle(5);
        assert_eq!(parse_bipartite(&write_bipartite(&g)).unwrap(), g);
        let h = GeneralGraph::cycle(6);
        assert_eq!(parse_general(&write_general(&h)).unwrap(), h);
        assert_eq!(write_bipartite(&parse_bipartite(&write_bipartite(&g)).unwrap()), write_bipartite(&g));
    }
}
