//! Minimal connected dominating sets as minimal transversals of `S(G)`.

use thiserror::Error;

use crate::model::{Graph, Hypergraph};
use crate::separators::{inclusion_minimal, minimal_separators};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdomError {
    #[error("graph is disconnected; it has no connected dominating set")]
    Disconnected,
}

/// Minimal transversals of a hypergraph by Berge multiplication.
///
/// Edges are folded in increasing size order and the partial family is
/// minimized after each fold. Every emitted set carries the cumulative work
/// (set operations performed) at the moment it was produced.
pub struct Dualization {
    solutions: std::vec::IntoIter<VertexSet>,
    work: u64,
    emitted: usize,
}

impl Dualization {
    pub fn new(h: &Hypergraph) -> Self {
        let mut edges: Vec<&VertexSet> = h.edges().iter().collect();
        edges.sort_by_key(|e| e.len());
        let mut partial = vec![h.empty_set()];
        let mut work = 0u64;
        for e in edges {
            let mut next = Vec::with_capacity(partial.len());
            for t in partial {
                work += 1;
                if t.intersects(e) {
                    next.push(t);
                } else {
                    for v in e {
                        work += 1;
                        next.push(t.with(v));
                    }
                }
            }
            work += next.len() as u64;
            partial = inclusion_minimal(next).into_iter().collect();
        }
        partial.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Self {
            solutions: partial.into_iter(),
            work,
            emitted: 0,
        }
    }

    /// Total work spent so far.
    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }
}

/// A solution together with the cumulative work at emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timed {
    pub set: VertexSet,
    pub work: u64,
}

impl Iterator for Dualization {
    type Item = Timed;

    fn next(&mut self) -> Option<Timed> {
        let set = self.solutions.next()?;
        self.work += 1;
        self.emitted += 1;
        Some(Timed { set, work: self.work })
    }
}

/// Streams `Tr(h)`.
pub fn incremental_dualize(h: &Hypergraph) -> Dualization {
    Dualization::new(h)
}

/// Minimal connected dominating sets of a connected graph.
///
/// When `S(G)` is empty the graph is complete, and the answer is the set of
/// universal singletons (or `{∅}` for the empty graph).
pub fn enumerate_mcds(g: &Graph) -> Result<Box<dyn Iterator<Item = Timed>>, CdomError> {
    if g.len() >= 2 && !g.is_connected() {
        return Err(CdomError::Disconnected);
    }
    let seps = minimal_separators(g);
    if seps.is_empty() && !g.is_empty() {
        let all = g.all_vertices();
        let n = g.len();
        let universal: Vec<Timed> = (0..n)
            .filter(|&v| g.closed_neighbors(v) == all)
            .enumerate()
            .map(|(k, v)| Timed {
                set: VertexSet::from_indices(n, [v]),
                work: (n + k + 1) as u64,
            })
            .collect();
        return Ok(Box::new(universal.into_iter()));
    }
    Ok(Box::new(incremental_dualize(&seps.to_hypergraph(g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{self, OracleCaps};
    use std::collections::BTreeSet;

    fn sets(it: impl Iterator<Item = Timed>) -> BTreeSet<VertexSet> {
        it.map(|t| t.set).collect()
    }

    fn fam(g: &Graph, sets: &[&[&str]]) -> BTreeSet<VertexSet> {
        sets.iter().map(|s| g.set_of(s.iter()).unwrap()).collect()
    }

    #[test]
    fn mcds_examples() {
        let caps = OracleCaps::default();
        let p4 = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(sets(enumerate_mcds(&p4).unwrap()), fam(&p4, &[&["b", "c"]]));
        let c4 = Graph::from_edges([("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]).unwrap();
        assert_eq!(
            sets(enumerate_mcds(&c4).unwrap()),
            fam(&c4, &[&["v1", "v2"], &["v2", "v3"], &["v3", "v4"], &["v4", "v1"]])
        );
        let k23 = Graph::from_edges([
            ("a1", "b1"), ("a1", "b2"), ("a1", "b3"),
            ("a2", "b1"), ("a2", "b2"), ("a2", "b3"),
        ])
        .unwrap();
        assert_eq!(sets(enumerate_mcds(&k23).unwrap()), oracles::brute_mcds(&k23, &caps).unwrap());
    }

    #[test]
    fn degenerate_graphs() {
        let k1 = Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(sets(enumerate_mcds(&k1).unwrap()), fam(&k1, &[&["a"]]));
        let k2 = Graph::from_edges([("a", "b")]).unwrap();
        assert_eq!(sets(enumerate_mcds(&k2).unwrap()), fam(&k2, &[&["a"], &["b"]]));
        let empty = Graph::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(sets(enumerate_mcds(&empty).unwrap()), [empty.empty_set()].into());
        let two = Graph::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(enumerate_mcds(&two).err(), Some(CdomError::Disconnected));
    }

    #[test]
    fn dualization_examples() {
        let caps = OracleCaps::default();
        let cases: Vec<Hypergraph> = vec![
            Hypergraph::from_named_edges([["b"], ["c"]]),
            Hypergraph::from_named_edges([["v1", "v3"], ["v2", "v4"]]),
            Hypergraph::from_named_edges([["a", "b"], ["b", "c"]]),
        ];
        for h in &cases {
            let got: BTreeSet<VertexSet> = incremental_dualize(h).map(|t| t.set).collect();
            assert_eq!(got, oracles::brute_transversals(h, &caps).unwrap());
        }
        let h = &cases[2];
        let got: BTreeSet<VertexSet> = incremental_dualize(h).map(|t| t.set).collect();
        let want: BTreeSet<VertexSet> = [
            VertexSet::from_indices(3, [1]),
            VertexSet::from_indices(3, [0, 2]),
        ]
        .into();
        assert_eq!(got, want);
        let works: Vec<u64> = incremental_dualize(h).map(|t| t.work).collect();
        assert!(works.windows(2).all(|w| w[0] < w[1]));
        let none = Hypergraph::new(vec!["a".into()], Vec::new());
        assert_eq!(incremental_dualize(&none).count(), 1);
    }
}
