use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::set::VertexSet;

use super::ModelError;

/// A finite simple undirected graph.
///
/// Vertex ids are opaque strings. They are sorted at construction and mapped
/// to dense indices `0..n`, so index order is lexicographic id order and every
/// tie-break "by smallest index" is a tie-break by id.
#[derive(Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from declared vertices plus an edge list. Endpoints that
    /// are not declared are added implicitly; repeated edges collapse.
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self, ModelError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (T, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let edges: Vec<(String, String)> = edges
            .into_iter()
            .map(|(u, v)| (u.as_ref().to_owned(), v.as_ref().to_owned()))
            .collect();
        let mut ids: BTreeSet<String> = vertices.into_iter().map(|v| v.as_ref().to_owned()).collect();
        for (u, v) in &edges {
            if u == v {
                return Err(ModelError::SelfLoop(u.clone()));
            }
            ids.insert(u.clone());
            ids.insert(v.clone());
        }
        let names: Vec<String> = ids.into_iter().collect();
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = names.len();
        let mut adj = vec![VertexSet::new(n); n];
        for (u, v) in &edges {
            let (a, b) = (index[u], index[v]);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Self { names, index, adj })
    }

    pub fn from_edges<E, T>(edges: E) -> Result<Self, ModelError>
    where
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        Self::new(std::iter::empty::<&str>(), edges)
    }

    /// Builds a graph over already-sorted unique names from index pairs.
    pub fn from_index_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = names.len();
        let mut adj = vec![VertexSet::new(n); n];
        for &(a, b) in edges {
            assert_ne!(a, b, "self-loop on index {a}");
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Self { names, index, adj }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, ModelError> {
        self.index_of(name)
            .ok_or_else(|| ModelError::UnknownVertex(name.to_owned()))
    }

    /// Resolves a list of ids into a vertex set.
    pub fn set_of<I, S>(&self, names: I) -> Result<VertexSet, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty_set();
        for name in names {
            s.insert(self.vertex(name.as_ref())?);
        }
        Ok(s)
    }

    /// The ids of `s`, in lexicographic order.
    pub fn names_of(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.len())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// N(S): vertices outside `s` with a neighbor in `s`.
    pub fn neighbors_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    /// N[S] = S ∪ N(S).
    pub fn closed_neighbors_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// N²(v): vertices at distance exactly two from `v`.
    pub fn second_neighbors(&self, v: usize) -> VertexSet {
        let closed = self.closed_neighbors(v);
        let mut out = self.empty_set();
        for u in &self.adj[v] {
            out.union_with(&self.adj[u]);
        }
        out.difference_with(&closed);
        out
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.adj[v].is_empty())
    }

    /// Connected components of the subgraph induced by `within`, each
    /// listed once, ordered by smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for start in within {
            if seen.contains(start) {
                continue;
            }
            let comp = self.reach_within(start, within);
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (which must contain `start`).
    pub fn reach_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut comp = self.empty_set();
        comp.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in &self.adj[u] {
                if within.contains(w) && comp.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        comp
    }

    /// Whether the subgraph induced by `within` is connected. Graphs with
    /// at most one vertex count as connected.
    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(start) => self.reach_within(start, within).len() == within.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.all_vertices())
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| (self.name(u), self.name(v)))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}
