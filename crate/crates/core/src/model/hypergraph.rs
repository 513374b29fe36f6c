use std::collections::{BTreeSet, HashSet};

use crate::set::VertexSet;

/// A finite hypergraph: a vertex list plus a family of distinct hyperedges.
///
/// Duplicate hyperedges are collapsed on construction; the number dropped is
/// kept in [`Hypergraph::duplicates_collapsed`]. Edge order is first-seen order.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    names: Vec<String>,
    edges: Vec<VertexSet>,
    collapsed: usize,
}

impl Hypergraph {
    /// `names` are the vertex ids (unique); edges index into them.
    pub fn new(names: Vec<String>, edges: impl IntoIterator<Item = VertexSet>) -> Self {
        let n = names.len();
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        let mut collapsed = 0;
        for e in edges {
            assert!(e.iter().all(|v| v < n), "hyperedge refers to unknown vertex");
            if seen.insert(e.clone()) {
                kept.push(e);
            } else {
                collapsed += 1;
            }
        }
        Self {
            names,
            edges: kept,
            collapsed,
        }
    }

    /// Builds a hypergraph over the sorted union of ids appearing in `edges`.
    pub fn from_named_edges<E, I, S>(edges: E) -> Self
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let raw: Vec<Vec<String>> = edges
            .into_iter()
            .map(|e| e.into_iter().map(|s| s.as_ref().to_owned()).collect())
            .collect();
        let names: Vec<String> = raw
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = names.len();
        let edges: Vec<VertexSet> = raw
            .iter()
            .map(|e| {
                VertexSet::from_indices(
                    n,
                    e.iter().map(|s| names.binary_search(s).expect("collected above")),
                )
            })
            .collect();
        Self::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn names_of(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn duplicates_collapsed(&self) -> usize {
        self.collapsed
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    /// Union of all hyperedges.
    pub fn support(&self) -> VertexSet {
        let mut s = self.empty_set();
        for e in &self.edges {
            s.union_with(e);
        }
        s
    }

    /// No hyperedge is contained in another.
    pub fn is_sperner(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, a)| {
            self.edges
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    pub fn is_transversal(&self, t: &VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(t))
    }

    /// Edges of this hypergraph meeting `s` exactly in `{v}`.
    pub fn private_edges<'a>(&'a self, s: &'a VertexSet, v: usize) -> impl Iterator<Item = &'a VertexSet> + 'a {
        self.edges
            .iter()
            .filter(move |e| e.contains(v) && e.intersection_len(s) == 1)
    }

    pub fn has_private_edge(&self, s: &VertexSet, v: usize) -> bool {
        self.private_edges(s, v).next().is_some()
    }

    /// Transversal whose every member owns a private edge.
    pub fn is_minimal_transversal(&self, t: &VertexSet) -> bool {
        self.is_transversal(t) && t.iter().all(|v| self.has_private_edge(t, v))
    }
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<Vec<&str>> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|v| self.names[v].as_str()).collect())
            .collect();
        f.debug_struct("Hypergraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}
