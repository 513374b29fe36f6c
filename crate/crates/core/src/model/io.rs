//! Plain-text graph and hypergraph formats.
//!
//! Edge lists hold one `u v` pair per line; a line with a single id declares
//! an isolated vertex. Hypergraph files hold one hyperedge per line as
//! whitespace-separated ids, with `{}` standing for the empty hyperedge. In
//! both formats `#` starts a comment and blank lines are ignored.

use std::fmt::Write as _;

use super::{Graph, Hypergraph, ModelError};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ModelError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            [v] => vertices.push(*v),
            [u, v] => {
                if u == v {
                    return Err(ModelError::Parse {
                        line,
                        message: format!("self-loop on `{u}`"),
                    });
                }
                edges.push((*u, *v));
            }
            _ => {
                return Err(ModelError::Parse {
                    line,
                    message: format!("expected `u v`, found {} tokens", tokens.len()),
                })
            }
        }
    }
    Graph::new(vertices, edges)
}

/// Edges sorted by endpoint ids, then isolated vertices.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.name(u), g.name(v));
    }
    for v in g.isolated_vertices() {
        let _ = writeln!(out, "{}", g.name(v));
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ModelError> {
    let mut edges: Vec<Vec<&str>> = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens == ["{}"] {
            edges.push(Vec::new());
        } else if tokens.contains(&"{}") {
            return Err(ModelError::Parse {
                line,
                message: "`{}` must stand alone".into(),
            });
        } else {
            edges.push(tokens);
        }
    }
    Ok(Hypergraph::from_named_edges(edges))
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    for e in h.edges() {
        if e.is_empty() {
            out.push_str("{}\n");
        } else {
            out.push_str(&h.names_of(e).join(" "));
            out.push('\n');
        }
    }
    out
}

/// One colour class per line, whitespace-separated ids.
pub fn parse_classes(text: &str) -> Vec<Vec<String>> {
    content_lines(text)
        .map(|(_, tokens)| tokens.into_iter().map(str::to_owned).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments_and_isolated() {
        let g = parse_edge_list("# p3 plus isolated\na b\n\nb c # trailing\nz\n").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(write_edge_list(&g), "a b\nb c\nz\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_edge_list("a b c\n"),
            Err(ModelError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b\nq q\n"),
            Err(ModelError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn hypergraph_text() {
        let h = parse_hypergraph("a b\n# c\nb c\n{}\n").unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(write_hypergraph(&h), "a b\nb c\n{}\n");
        assert!(parse_hypergraph("a {}\n").is_err());
    }
}
