use std::collections::HashMap;
use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the line-oriented edge-list format: one `u v` pair per line,
/// `#` starts a comment, blank lines are ignored. Edge ids follow line order
/// and vertices are numbered in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse { line, message: format!("expected two vertex names, found {}", tokens.len()) });
        }
        if tokens[0] == tokens[1] {
            return Err(Error::Parse { line, message: format!("self-loop at `{}`", tokens[0]) });
        }
        let mut vertex = |name: &str| {
            *index.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() - 1
            })
        };
        let u = vertex(tokens[0]);
        let v = vertex(tokens[1]);
        if let Some(prev) = seen.insert((u.min(v), u.max(v)), line) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {} {} (first on line {prev})", tokens[0], tokens[1]),
            });
        }
        edges.push((u, v));
    }
    if labels.is_empty() {
        return Err(Error::Parse { line: 0, message: "no edges".into() });
    }
    Graph::new(labels, edges).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
}

/// Serializes a graph in the edge-list format, one edge per line in id order.
/// Isolated vertices cannot be represented and are dropped.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (_, u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    #[test]
    fn triangle() {
        let g = parse_edge_list("a b\na c\nb c").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.endpoints(EdgeId(1)), (0, 1));
        assert_eq!(g.endpoints(EdgeId(2)), (0, 2));
        assert_eq!(g.endpoints(EdgeId(3)), (1, 2));
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = parse_edge_list("a b\na b").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_edge_list("a b\nb a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn self_loop_and_malformed() {
        assert!(matches!(parse_edge_list("a b\nc c").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_edge_list("# header\na b c").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_edge_list("a\n").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# K5\n\n1 2 # first\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 10);
        assert!(g.is_regular(4));
    }

    #[test]
    fn serializes_back() {
        let text = "a b\na c\nb c\n";
        assert_eq!(to_edge_list(&parse_edge_list(text).unwrap()), text);
    }
}
