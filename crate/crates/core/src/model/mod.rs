//! Graphs, hypergraphs and the domination-to-transversal translations.

mod graph;
mod hypergraph;
pub mod io;

use std::collections::VecDeque;

use thiserror::Error;

pub use graph::Graph;
pub use hypergraph::Hypergraph;

use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("vertex `{0}` is isolated, so no total dominating set exists")]
    IsolatedVertex(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// The two colour classes of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl Bipartition {
    /// The side containing `v`.
    pub fn side_of(&self, v: usize) -> &VertexSet {
        if self.side_a.contains(v) {
            &self.side_a
        } else {
            &self.side_b
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteCheck {
    Bipartite(Bipartition),
    /// An odd cycle, listed in traversal order.
    NotBipartite { odd_cycle: Vec<usize> },
}

impl BipartiteCheck {
    pub fn ok(self) -> Option<Bipartition> {
        match self {
            BipartiteCheck::Bipartite(b) => Some(b),
            BipartiteCheck::NotBipartite { .. } => None,
        }
    }
}

/// `{N[v] : v ∈ V(g)}`; its minimal transversals are the minimal dominating sets.
pub fn closed_neighborhood_hypergraph(g: &Graph) -> Hypergraph {
    Hypergraph::new(
        g.names().to_vec(),
        (0..g.len()).map(|v| g.closed_neighbors(v)).collect::<Vec<_>>(),
    )
}

/// `{N(v) : v ∈ V(g)}`; its minimal transversals are the minimal total
/// dominating sets. Fails on the first isolated vertex.
pub fn open_neighborhood_hypergraph(g: &Graph) -> Result<Hypergraph, ModelError> {
    if let Some(v) = g.isolated_vertices().next() {
        return Err(ModelError::IsolatedVertex(g.name(v).to_owned()));
    }
    Ok(Hypergraph::new(
        g.names().to_vec(),
        (0..g.len()).map(|v| g.neighbors(v).clone()).collect::<Vec<_>>(),
    ))
}

/// Components of `g - removed`, ordered by smallest id.
pub fn components(g: &Graph, removed: &VertexSet) -> Result<Vec<VertexSet>, ModelError> {
    if let Some(bad) = removed.iter().find(|&v| v >= g.len()) {
        return Err(ModelError::UnknownVertex(format!("#{bad}")));
    }
    Ok(g.components_within(&g.all_vertices().difference(removed)))
}

/// Two-colours `g` by BFS; in each component the smallest id lands in `side_a`.
pub fn bipartition(g: &Graph) -> BipartiteCheck {
    let n = g.len();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].expect("queued vertices are coloured");
            for w in g.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return BipartiteCheck::NotBipartite {
                            odd_cycle: tree_cycle(u, w, &parent, &depth),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut side_a = g.empty_set();
    let mut side_b = g.empty_set();
    for (v, c) in colour.iter().enumerate() {
        if *c == Some(false) {
            side_a.insert(v);
        } else {
            side_b.insert(v);
        }
    }
    BipartiteCheck::Bipartite(Bipartition { side_a, side_b })
}

/// Closes the BFS-tree paths from `u` and `w` up to their common ancestor.
fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Keeps only the inclusion-minimal hyperedges. Transversals are unchanged.
pub fn sperner_minimize(h: &Hypergraph) -> Hypergraph {
    let edges = h.edges();
    let kept: Vec<VertexSet> = edges
        .iter()
        .filter(|e| !edges.iter().any(|f| f.is_proper_subset(e)))
        .cloned()
        .collect();
    Hypergraph::new(h.names().to_vec(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(h: &Hypergraph) -> Vec<Vec<String>> {
        h.edges().iter().map(|e| h.names_of(e)).collect()
    }

    pub(crate) fn c4() -> Graph {
        Graph::from_edges([("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]).unwrap()
    }

    pub(crate) fn p4() -> Graph {
        Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    fn sets(g: &Graph, s: &[&[&str]]) -> Vec<VertexSet> {
        s.iter().map(|x| g.set_of(x.iter()).unwrap()).collect()
    }

    #[test]
    fn closed_neighborhoods_of_small_graphs() {
        let k1 = Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(named(&closed_neighborhood_hypergraph(&k1)), vec![vec!["a"]]);

        let g = c4();
        let h = closed_neighborhood_hypergraph(&g);
        assert_eq!(
            h.edges(),
            sets(&g, &[&["v4", "v1", "v2"], &["v1", "v2", "v3"], &["v2", "v3", "v4"], &["v3", "v4", "v1"]])
        );

        let g = p4();
        let h = closed_neighborhood_hypergraph(&g);
        assert_eq!(h.edges(), sets(&g, &[&["a", "b"], &["a", "b", "c"], &["b", "c", "d"], &["c", "d"]]));
    }

    #[test]
    fn closed_neighborhoods_collapse_duplicates() {
        let p2 = Graph::from_edges([("a", "b")]).unwrap();
        let h = closed_neighborhood_hypergraph(&p2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.duplicates_collapsed(), 1);
    }

    #[test]
    fn open_neighborhoods() {
        let p2 = Graph::from_edges([("a", "b")]).unwrap();
        assert_eq!(named(&open_neighborhood_hypergraph(&p2).unwrap()), vec![vec!["b"], vec!["a"]]);

        let g = p4();
        let h = open_neighborhood_hypergraph(&g).unwrap();
        assert_eq!(h.edges(), sets(&g, &[&["b"], &["a", "c"], &["b", "d"], &["c"]]));

        let k1 = Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(
            open_neighborhood_hypergraph(&k1),
            Err(ModelError::IsolatedVertex("a".into()))
        );
    }

    #[test]
    fn components_examples() {
        let g = p4();
        assert_eq!(
            components(&g, &g.set_of(["b"]).unwrap()).unwrap(),
            sets(&g, &[&["a"], &["c", "d"]])
        );
        let g = c4();
        assert_eq!(components(&g, &g.empty_set()).unwrap(), vec![g.all_vertices()]);
        assert_eq!(
            components(&g, &g.set_of(["v1", "v3"]).unwrap()).unwrap(),
            sets(&g, &[&["v2"], &["v4"]])
        );
        assert!(matches!(
            components(&g, &VertexSet::from_indices(10, [7])),
            Err(ModelError::UnknownVertex(_))
        ));
        assert!(matches!(g.set_of(["zz"]), Err(ModelError::UnknownVertex(_))));
    }

    #[test]
    fn bipartition_examples() {
        let g = c4();
        let b = bipartition(&g).ok().unwrap();
        assert_eq!(b.side_a, g.set_of(["v1", "v3"]).unwrap());
        assert_eq!(b.side_b, g.set_of(["v2", "v4"]).unwrap());

        let g = p4();
        let b = bipartition(&g).ok().unwrap();
        assert_eq!(b.side_a, g.set_of(["a", "c"]).unwrap());

        let c3 = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        match bipartition(&c3) {
            BipartiteCheck::NotBipartite { odd_cycle } => {
                assert_eq!(odd_cycle.len(), 3);
                for i in 0..3 {
                    assert!(c3.adjacent(odd_cycle[i], odd_cycle[(i + 1) % 3]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_on_c5_with_tail() {
        let g = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("e", "f")])
            .unwrap();
        let BipartiteCheck::NotBipartite { odd_cycle } = bipartition(&g) else {
            panic!("C5 is not bipartite");
        };
        assert_eq!(odd_cycle.len() % 2, 1);
        let k = odd_cycle.len();
        for i in 0..k {
            assert!(g.adjacent(odd_cycle[i], odd_cycle[(i + 1) % k]));
        }
    }

    #[test]
    fn sperner_examples() {
        let h = Hypergraph::from_named_edges([vec!["a"], vec!["a", "b"]]);
        assert_eq!(named(&sperner_minimize(&h)), vec![vec!["a"]]);

        let h = Hypergraph::from_named_edges([vec!["a", "b"], vec!["b", "c"]]);
        assert_eq!(sperner_minimize(&h), h);

        let g = p4();
        let h = sperner_minimize(&closed_neighborhood_hypergraph(&g));
        assert_eq!(h.edges(), sets(&g, &[&["a", "b"], &["c", "d"]]));
    }

    #[test]
    fn self_loops_rejected() {
        assert_eq!(Graph::from_edges([("a", "a")]), Err(ModelError::SelfLoop("a".into())));
    }
}
