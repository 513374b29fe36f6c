//! Minimal separators, their closeness properties, and conformality.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::model::{bipartition, Graph, Hypergraph};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("`{0}` and `{1}` are adjacent or equal; no separator exists")]
    AdjacentPair(String, String),
    #[error("removing the given set leaves the graph connected")]
    NotSeparator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorSource {
    /// Minimal separators for one fixed pair of vertices.
    AbFamily,
    /// `S(G)`: inclusion-minimal separators of the whole graph.
    MinimalFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSet {
    /// Sorted by size, then lexicographically.
    pub separators: Vec<VertexSet>,
    pub source: SeparatorSource,
}

impl SeparatorSet {
    fn from_family(family: BTreeSet<VertexSet>, source: SeparatorSource) -> Self {
        let mut separators: Vec<VertexSet> = family.into_iter().collect();
        separators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Self { separators, source }
    }

    pub fn len(&self) -> usize {
        self.separators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.separators.is_empty()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.separators.contains(s)
    }

    pub fn to_hypergraph(&self, g: &Graph) -> Hypergraph {
        Hypergraph::new(g.names().to_vec(), self.separators.iter().cloned())
    }
}

/// `N(C)` for the component `C` of `b` in `G - removed`, or `None` when `b`
/// itself is removed.
fn component_border(g: &Graph, removed: &VertexSet, b: usize) -> Option<(VertexSet, VertexSet)> {
    if removed.contains(b) {
        return None;
    }
    let c = g.reach_within(b, &g.all_vertices().difference(removed));
    Some((g.neighbors_of_set(&c).difference(&c), c))
}

/// `s` separates `a` from `b` and both their components are full.
fn is_minimal_ab(g: &Graph, s: &VertexSet, a: usize, b: usize) -> bool {
    if s.contains(a) || s.contains(b) {
        return false;
    }
    let rest = g.all_vertices().difference(s);
    let ca = g.reach_within(a, &rest);
    if ca.contains(b) {
        return false;
    }
    let cb = g.reach_within(b, &rest);
    let full = |c: &VertexSet| s.iter().all(|x| g.neighbors(x).intersects(c));
    full(&ca) && full(&cb)
}

/// All minimal separators between two non-adjacent vertices.
///
/// Separators are generated close to `a` first, then expanded by swapping a
/// member `x` for its neighborhood and taking the border of `b`'s component.
pub fn ab_minimal_separators(g: &Graph, a: usize, b: usize) -> Result<SeparatorSet, SeparatorError> {
    if a == b || g.adjacent(a, b) {
        return Err(SeparatorError::AdjacentPair(g.name(a).to_owned(), g.name(b).to_owned()));
    }
    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    let offer = |s: VertexSet, found: &mut BTreeSet<VertexSet>, queue: &mut VecDeque<VertexSet>| {
        if is_minimal_ab(g, &s, a, b) && found.insert(s.clone()) {
            queue.push_back(s);
        }
    };
    if let Some((seed, _)) = component_border(g, &g.closed_neighbors(a), b) {
        offer(seed, &mut found, &mut queue);
    }
    while let Some(s) = queue.pop_front() {
        for x in &s {
            if g.adjacent(x, b) {
                continue;
            }
            let removed = s.union(g.neighbors(x));
            if let Some((border, _)) = component_border(g, &removed, b) {
                offer(border, &mut found, &mut queue);
            }
        }
    }
    Ok(SeparatorSet::from_family(found, SeparatorSource::AbFamily))
}

/// Keeps the inclusion-minimal members of `family`.
pub fn inclusion_minimal(family: impl IntoIterator<Item = VertexSet>) -> BTreeSet<VertexSet> {
    let mut all: Vec<VertexSet> = family.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    all.sort_by_key(|s| s.len());
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in all {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.into_iter().collect()
}

/// `S(G)`: sets whose removal disconnects `G` and that are minimal with this
/// property. A disconnected graph has `S(G) = {∅}`; a complete graph has none.
pub fn minimal_separators(g: &Graph) -> SeparatorSet {
    if g.len() >= 2 && !g.is_connected() {
        return SeparatorSet::from_family([g.empty_set()].into(), SeparatorSource::MinimalFamily);
    }
    let mut union = BTreeSet::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            if let Ok(family) = ab_minimal_separators(g, a, b) {
                union.extend(family.separators);
            }
        }
    }
    SeparatorSet::from_family(inclusion_minimal(union), SeparatorSource::MinimalFamily)
}

/// Components of `G - s` in which every member of `s` has a neighbor.
/// Components are ordered by smallest member; the returned positions index
/// into that order.
pub fn close_components(g: &Graph, s: &VertexSet) -> Result<Vec<usize>, SeparatorError> {
    let comps = g.components_within(&g.all_vertices().difference(s));
    if comps.len() < 2 {
        return Err(SeparatorError::NotSeparator);
    }
    Ok(comps
        .iter()
        .enumerate()
        .filter(|(_, c)| s.iter().all(|x| g.neighbors(x).intersects(c)))
        .map(|(k, _)| k)
        .collect())
}

/// `G[s]` is complete bipartite (an edgeless `s` counts, with one side empty).
pub fn check_complete_bipartite_separator(g: &Graph, s: &VertexSet) -> bool {
    let inner: Vec<usize> = s.iter().collect();
    if inner.iter().all(|&x| !g.neighbors(x).intersects(s)) {
        return true;
    }
    // With at least one edge, the sides are forced: an edge's endpoints fix them.
    let (p, q) = inner
        .iter()
        .find_map(|&x| g.neighbors(x).intersection(s).first().map(|y| (x, y)))
        .expect("has an edge");
    let side_p = g.neighbors(q).intersection(s);
    let side_q = g.neighbors(p).intersection(s);
    if side_p.intersects(&side_q) || side_p.union(&side_q) != *s {
        return false;
    }
    side_p.iter().all(|x| g.neighbors(x).intersection(s) == side_q)
        && side_q.iter().all(|y| g.neighbors(y).intersection(s) == side_p)
}

/// For a bipartite `G` with colour classes `A` and `B`: each close component
/// `C` of `G - s` has some `x ∈ C` with `N(x) ∩ s = s ∩ A`, for whichever class
/// `A` meets `s`. Returns the first failing `(class member set, component)`.
pub fn close_neighbor_violation(g: &Graph, s: &VertexSet) -> Option<(VertexSet, VertexSet)> {
    let parts = bipartition(g).ok()?;
    let comps = g.components_within(&g.all_vertices().difference(s));
    let close = close_components(g, s).ok()?;
    for side in [&parts.side_a, &parts.side_b] {
        let target = s.intersection(side);
        if target.is_empty() {
            continue;
        }
        for &k in &close {
            let c = &comps[k];
            if !c.iter().any(|x| g.neighbors(x).intersection(s) == target) {
                return Some((target, c.clone()));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conformality {
    Exactly(usize),
    AboveMax,
}

/// The `c`-edge test: for every `c + 1` distinct edges, the vertices lying in
/// at least `c` of them are covered by a single edge.
pub fn is_c_conformal(h: &Hypergraph, c: usize) -> bool {
    assert!(c >= 1);
    let edges = h.edges();
    let k = c + 1;
    if edges.len() < k {
        return true;
    }
    let n = h.vertex_count();
    let mut pick: Vec<usize> = (0..k).collect();
    let mut counts = vec![0usize; n];
    loop {
        counts.iter_mut().for_each(|x| *x = 0);
        for &e in &pick {
            for v in &edges[e] {
                counts[v] += 1;
            }
        }
        let x = VertexSet::from_indices(n, (0..n).filter(|&v| counts[v] >= c));
        if !edges.iter().any(|e| x.is_subset(e)) {
            return false;
        }
        let mut j = k;
        loop {
            if j == 0 {
                return true;
            }
            j -= 1;
            if pick[j] < edges.len() - k + j {
                pick[j] += 1;
                for t in j + 1..k {
                    pick[t] = pick[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Least `c` in `1..=c_max` for which `h` is `c`-conformal.
pub fn conformality(h: &Hypergraph, c_max: usize) -> Conformality {
    (1..=c_max)
        .find(|&c| is_c_conformal(h, c))
        .map_or(Conformality::AboveMax, Conformality::Exactly)
}
