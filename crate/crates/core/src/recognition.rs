//! Weak-simplicial elimination orderings and bipartite-chain orders.
//!
//! A vertex is weak-simplicial when its neighborhood is independent and the
//! neighborhoods of its neighbors are pairwise comparable under inclusion. A
//! graph is chordal bipartite exactly when its vertices can be ordered
//! `v_1..v_n` with each `v_i` weak-simplicial in `G[v_1..v_i]`.

use crate::model::{Graph, ModelError};
use crate::set::VertexSet;

/// Outcome of a weak-simpliciality test, with a violating pair on failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakSimplicial {
    Yes,
    /// Two neighbors of the vertex are adjacent.
    AdjacentNeighbors(usize, usize),
    /// Two neighbors of the vertex have incomparable neighborhoods.
    Incomparable(usize, usize),
}

impl WeakSimplicial {
    pub fn holds(self) -> bool {
        self == WeakSimplicial::Yes
    }
}

/// Weak-simpliciality of `v` in the subgraph induced by `within`.
pub fn weak_simplicial_within(g: &Graph, within: &VertexSet, v: usize) -> WeakSimplicial {
    let nbrs = g.neighbors(v).intersection(within);
    let list = nbrs.to_vec();
    for (i, &x) in list.iter().enumerate() {
        let nx = g.neighbors(x).intersection(within);
        if let Some(y) = nx.intersection(&nbrs).first() {
            return WeakSimplicial::AdjacentNeighbors(x.min(y), x.max(y));
        }
        for &y in &list[i + 1..] {
            let ny = g.neighbors(y).intersection(within);
            if !nx.is_subset(&ny) && !ny.is_subset(&nx) {
                return WeakSimplicial::Incomparable(x, y);
            }
        }
    }
    WeakSimplicial::Yes
}

pub fn is_weak_simplicial(g: &Graph, v: &str) -> Result<WeakSimplicial, ModelError> {
    let v = g.vertex(v)?;
    Ok(weak_simplicial_within(g, &g.all_vertices(), v))
}

/// A vertex order `v_1..v_n` in which every `v_i` is weak-simplicial in the
/// graph induced by `v_1..v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    order: Vec<usize>,
}

impl EliminationOrdering {
    /// Wraps `order` after checking it against the definition.
    pub fn new(g: &Graph, order: Vec<usize>) -> Option<Self> {
        let candidate = Self { order };
        candidate.verify(g).then_some(candidate)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }

    /// Permutation check plus per-prefix weak-simpliciality.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.order.len() != g.len() {
            return false;
        }
        let mut prefix = g.empty_set();
        for &v in &self.order {
            if v >= g.len() || !prefix.insert(v) {
                return false;
            }
            if !weak_simplicial_within(g, &prefix, v).holds() {
                return false;
            }
        }
        true
    }
}

/// Greedy elimination from the back: repeatedly remove the weak-simplicial
/// vertex with the largest id, which becomes the last vertex of what is left.
/// Returns `None` exactly when some stage has no weak-simplicial vertex.
pub fn weak_simplicial_ordering(g: &Graph) -> Option<EliminationOrdering> {
    let mut remaining = g.all_vertices();
    let mut removed = Vec::with_capacity(g.len());
    while !remaining.is_empty() {
        let pick = remaining
            .to_vec()
            .into_iter()
            .rev()
            .find(|&v| weak_simplicial_within(g, &remaining, v).holds())?;
        remaining.remove(pick);
        removed.push(pick);
    }
    removed.reverse();
    let ordering = EliminationOrdering { order: removed };
    assert!(ordering.verify(g), "greedy elimination produced an invalid ordering");
    Some(ordering)
}

pub fn is_chordal_bipartite(g: &Graph) -> bool {
    weak_simplicial_ordering(g).is_some()
}

/// Orders witnessing a bipartite chain: `N(x_1) ⊆ … ⊆ N(x_p)` and
/// `N(y_1) ⊇ … ⊇ N(y_q)`, neighborhoods taken inside `X ∪ Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrders {
    pub x_order: Vec<usize>,
    pub y_order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainCheck {
    Chain(ChainOrders),
    /// Two vertices on the same side with incomparable neighborhoods.
    NotChain { witness: (usize, usize) },
}

impl ChainCheck {
    pub fn ok(self) -> Option<ChainOrders> {
        match self {
            ChainCheck::Chain(c) => Some(c),
            ChainCheck::NotChain { .. } => None,
        }
    }
}

/// Sorts each side by degree into the other side (ids break ties), then
/// verifies the inclusion chain between consecutive vertices.
pub fn chain_orders(g: &Graph, x: &VertexSet, y: &VertexSet) -> ChainCheck {
    debug_assert!(!x.intersects(y));
    let side_order = |side: &VertexSet, other: &VertexSet, ascending: bool| {
        let mut keyed: Vec<(usize, usize, VertexSet)> = side
            .iter()
            .map(|v| {
                let n = g.neighbors(v).intersection(other);
                (n.len(), v, n)
            })
            .collect();
        keyed.sort_by(|a, b| {
            let by_degree = if ascending { a.0.cmp(&b.0) } else { b.0.cmp(&a.0) };
            by_degree.then(a.1.cmp(&b.1))
        });
        keyed
    };
    let xs = side_order(x, y, true);
    let ys = side_order(y, x, false);
    for w in xs.windows(2) {
        if !w[0].2.is_subset(&w[1].2) {
            return ChainCheck::NotChain { witness: (w[0].1, w[1].1) };
        }
    }
    for w in ys.windows(2) {
        if !w[1].2.is_subset(&w[0].2) {
            return ChainCheck::NotChain { witness: (w[0].1, w[1].1) };
        }
    }
    ChainCheck::Chain(ChainOrders {
        x_order: xs.into_iter().map(|k| k.1).collect(),
        y_order: ys.into_iter().map(|k| k.1).collect(),
    })
}

/// Literal check of both inclusion chains.
pub fn verify_chain_orders(g: &Graph, orders: &ChainOrders) -> bool {
    let xs = VertexSet::from_indices(g.len(), orders.x_order.iter().copied());
    let ys = VertexSet::from_indices(g.len(), orders.y_order.iter().copied());
    let n_in = |v: usize, other: &VertexSet| g.neighbors(v).intersection(other);
    let x_ok = orders.x_order.iter().enumerate().all(|(i, &a)| {
        orders.x_order[i..]
            .iter()
            .all(|&b| n_in(a, &ys).is_subset(&n_in(b, &ys)))
    });
    let y_ok = orders.y_order.iter().enumerate().all(|(i, &a)| {
        orders.y_order[i..]
            .iter()
            .all(|&b| n_in(b, &xs).is_subset(&n_in(a, &xs)))
    });
    x_ok && y_ok
}
