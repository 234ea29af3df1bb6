//! Graph files.
//!
//! Text form, one record per line, vertices numbered from 0:
//!
//! ```text
//! p odd <n> <m>
//! e <u> <v> <weight>      weights as integers, decimals or p/q
//! s <vertex>
//! t <vertex>
//! c even <edge>           optional parity constraints, edges by input order
//! c odd <edge>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The JSON form
//! carries the same fields; weights are strings so fractions stay exact.

use std::fmt::Write as _;

use oddpath_core::spcop::ParityConstraints;
use oddpath_core::{Vertex, Weight, WeightedGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    pub s: Option<Vertex>,
    pub t: Option<Vertex>,
    pub constraints: ParityConstraints,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p odd <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Graph(#[from] oddpath_core::Error),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEdge {
    u: Vertex,
    v: Vertex,
    weight: String,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct JsonConstraints {
    #[serde(default)]
    even: Vec<usize>,
    #[serde(default)]
    odd: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<JsonEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<Vertex>,
    #[serde(default)]
    constraints: JsonConstraints,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(
    line: usize,
    token: Option<&str>,
    what: &str,
) -> Result<T, FormatError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

pub fn parse_text(text: &str) -> Result<GraphFile, FormatError> {
    let mut graph: Option<(WeightedGraph, usize)> = None;
    let mut s = None;
    let mut t = None;
    let mut constraints = ParityConstraints::default();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let kind = tokens.next().expect("non-empty line");
        if kind != "p" && graph.is_none() {
            return Err(syntax(line, "expected the `p odd <n> <m>` header first"));
        }
        match kind {
            "p" => {
                if graph.is_some() {
                    return Err(syntax(line, "duplicate header"));
                }
                if tokens.next() != Some("odd") {
                    return Err(syntax(line, "header must read `p odd <n> <m>`"));
                }
                let n = number(line, tokens.next(), "vertex count")?;
                let m = number(line, tokens.next(), "edge count")?;
                graph = Some((WeightedGraph::new(n), m));
            }
            "e" => {
                let u: Vertex = number(line, tokens.next(), "vertex")?;
                let v: Vertex = number(line, tokens.next(), "vertex")?;
                let weight: Weight = number(line, tokens.next(), "weight")?;
                let (g, _) = graph.as_mut().expect("header seen");
                g.add_edge(u, v, weight)
                    .map_err(|e| syntax(line, e.to_string()))?;
            }
            "s" | "t" => {
                let vertex: Vertex = number(line, tokens.next(), "vertex")?;
                let (g, _) = graph.as_ref().expect("header seen");
                g.check_vertex(vertex)
                    .map_err(|e| syntax(line, e.to_string()))?;
                if kind == "s" {
                    s = Some(vertex);
                } else {
                    t = Some(vertex);
                }
            }
            "c" => {
                let parity = tokens.next();
                let edge: usize = number(line, tokens.next(), "edge")?;
                match parity {
                    Some("even") => constraints.even.push(edge),
                    Some("odd") => constraints.odd.push(edge),
                    _ => {
                        return Err(syntax(
                            line,
                            "constraint must read `c even <edge>` or `c odd <edge>`",
                        ))
                    }
                }
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
        if let Some(extra) = tokens.next() {
            return Err(syntax(line, format!("unexpected token `{extra}`")));
        }
    }
    let (graph, declared) = graph.ok_or(FormatError::MissingHeader)?;
    if graph.m() != declared {
        return Err(FormatError::EdgeCount {
            declared,
            found: graph.m(),
        });
    }
    for &e in constraints.even.iter().chain(&constraints.odd) {
        graph.check_edge(e)?;
    }
    Ok(GraphFile {
        graph,
        s,
        t,
        constraints,
    })
}

pub fn parse_json(text: &str) -> Result<GraphFile, FormatError> {
    let raw: JsonGraph = serde_json::from_str(text)?;
    let mut graph = WeightedGraph::new(raw.n);
    for (i, edge) in raw.edges.iter().enumerate() {
        let weight: Weight = edge.weight.parse().map_err(|_| {
            syntax(
                i + 1,
                format!("invalid weight `{}` in edge {i}", edge.weight),
            )
        })?;
        graph.add_edge(edge.u, edge.v, weight)?;
    }
    for v in raw.s.iter().chain(&raw.t) {
        graph.check_vertex(*v)?;
    }
    for &e in raw.constraints.even.iter().chain(&raw.constraints.odd) {
        graph.check_edge(e)?;
    }
    Ok(GraphFile {
        graph,
        s: raw.s,
        t: raw.t,
        constraints: ParityConstraints::new(raw.constraints.even, raw.constraints.odd),
    })
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_graph(text: &str) -> Result<GraphFile, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn write_text(g: &WeightedGraph, s: Option<Vertex>, t: Option<Vertex>) -> String {
    let mut out = format!("p odd {} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.weight).expect("writing to a string");
    }
    if let Some(s) = s {
        writeln!(out, "s {s}").expect("writing to a string");
    }
    if let Some(t) = t {
        writeln!(out, "t {t}").expect("writing to a string");
    }
    out
}

pub fn write_json(g: &WeightedGraph, s: Option<Vertex>, t: Option<Vertex>) -> String {
    let raw = JsonGraph {
        n: g.n(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                u: e.u,
                v: e.v,
                weight: e.weight.to_string(),
            })
            .collect(),
        s,
        t,
        constraints: JsonConstraints::default(),
    };
    serde_json::to_string_pretty(&raw).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str =
        "p odd 3 3\n# comment\ne 0 1 -1/2\ne 1 2 1.5\ne 0 2 2\ns 0\nt 2\nc odd 0\n";

    #[test]
    fn text_round_trip() {
        let file = parse_text(TRIANGLE).unwrap();
        assert_eq!(file.graph.weight(0), Weight::new(-1, 2));
        assert_eq!(file.graph.weight(1), Weight::new(3, 2));
        assert_eq!((file.s, file.t), (Some(0), Some(2)));
        assert_eq!(file.constraints.odd, [0]);
        let again = parse_text(&write_text(&file.graph, file.s, file.t)).unwrap();
        assert_eq!(again.graph, file.graph);
    }

    #[test]
    fn json_mirror_matches_text() {
        let file = parse_text(TRIANGLE).unwrap();
        let json = write_json(&file.graph, file.s, file.t);
        let back = parse_graph(&json).unwrap();
        assert_eq!(back.graph, file.graph);
        assert_eq!((back.s, back.t), (file.s, file.t));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_text("p odd 2 1\n\ne 0 1 abc\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: invalid weight `abc`");
        let err = parse_text("p odd 2 1\ne 0 0 1\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2: self-loop"), "{err}");
        assert!(matches!(
            parse_text("p odd 2 2\ne 0 1 1\n"),
            Err(FormatError::EdgeCount {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(parse_text(""), Err(FormatError::MissingHeader)));
        assert!(matches!(
            parse_text("e 0 1 1\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
    }
}
