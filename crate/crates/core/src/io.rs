//! Reading graphs.
//!
//! Text format: the first line is `m`, every further nonempty line is an edge
//! `i j`. `#` starts a comment. JSON format: `{"m": 5, "edges": [[1, 2], ...]}`.

use serde::Deserialize;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    m: usize,
    edges: Vec<(usize, usize)>,
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_graph(text: &str) -> Result<FlagComplex> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_graph_json(text: &str) -> Result<FlagComplex> {
    let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    FlagComplex::new(g.m, g.edges)
}

pub fn parse_graph_text(text: &str) -> Result<FlagComplex> {
    let mut m = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("expected a vertex number, found `{s}`")))
        };
        let Some(m) = m else {
            if fields.len() != 1 {
                return Err(Error::parse(line_no, "first line must hold the vertex count"));
            }
            m = Some(number(fields[0])?);
            continue;
        };
        let [a, b] = fields[..] else {
            return Err(Error::parse(line_no, format!("expected an edge `i j`, found `{line}`")));
        };
        let (a, b) = (number(a)?, number(b)?);
        // Check per line so errors carry the line number.
        FlagComplex::new(m, [(a, b)]).map_err(|e| Error::parse(line_no, e.to_string()))?;
        edges.push((a, b));
    }
    let m = m.ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    FlagComplex::new(m, edges)
}

/// Parses `1-2,2-3,...`. Without `vertices`, `m` is the largest vertex named.
pub fn parse_edge_list(text: &str, vertices: Option<usize>) -> Result<FlagComplex> {
    let mut edges = Vec::new();
    for (k, token) in text.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        let bad = || Error::parse(1, format!("edge {}: expected `i-j`, found `{token}`", k + 1));
        let (a, b) = token.split_once('-').ok_or_else(bad)?;
        let a = a.trim().parse::<usize>().map_err(|_| bad())?;
        let b = b.trim().parse::<usize>().map_err(|_| bad())?;
        edges.push((a, b));
    }
    let m = vertices.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0));
    FlagComplex::new(m, edges)
}

/// Text-format rendering, readable by [`parse_graph_text`].
pub fn graph_to_text(complex: &FlagComplex) -> String {
    let mut out = format!("{}\n", complex.vertex_count());
    for (a, b) in complex.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let k = parse_graph("# square\n4\n1 2\n2 3\n\n3 4\n4 1\n1 2\n").unwrap();
        assert_eq!(k, FlagComplex::cycle(4).unwrap());
        assert_eq!(parse_graph(&graph_to_text(&k)).unwrap(), k);
        assert_eq!(parse_graph("3\n").unwrap(), FlagComplex::edgeless(3).unwrap());
    }

    #[test]
    fn json_format() {
        let k = parse_graph(r#"{"m": 4, "edges": [[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
        assert_eq!(k, FlagComplex::cycle(4).unwrap());
        assert!(matches!(parse_graph(r#"{"m": 4}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = parse_graph("4\n1 2\n2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_graph("4\n1 2\n2 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_graph("4\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_graph("4 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn edge_lists() {
        assert_eq!(parse_edge_list("1-2,2-3,3-4,4-1", None).unwrap(), FlagComplex::cycle(4).unwrap());
        assert_eq!(parse_edge_list("1-2", Some(3)).unwrap().vertex_count(), 3);
        assert_eq!(parse_edge_list("", Some(2)).unwrap(), FlagComplex::edgeless(2).unwrap());
        assert!(parse_edge_list("1-", None).is_err());
        assert!(parse_edge_list("1-2", Some(1)).is_err());
    }
}
