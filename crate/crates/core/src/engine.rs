//! Ordered generation of minimal transversals.
//!
//! Fix a vertex order `v_1..v_n` of a hypergraph `H` and write `H_i` for the
//! hyperedges contained in `V_i = {v_1..v_i}`. Every `T ∈ Tr(H_{i+1})` has a
//! unique parent in `Tr(H_i)`, obtained by repeatedly dropping the earliest
//! vertex of `T` that owns no private edge in `H_i`. The parent relation is a
//! tree rooted at `(∅, 0)` whose depth-`n` nodes are exactly `Tr(H)`; this
//! module walks it depth-first with an explicit stack.
//!
//! Children of `(T*, i)` are found among `T* ∪ X` for `X ∈ Tr(Δ_{i+1})`, where
//! `Δ_{i+1}` holds the edges of `H_{i+1}` missed by `T*`. Producing those `X`
//! is delegated to an [`ExtensionOracle`].

use thiserror::Error;

use crate::model::Hypergraph;
use crate::oracles::{self, OracleError};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("prefix index {i} out of range 0..={n}")]
    BadIndex { i: usize, n: usize },
    #[error("vertex order is not a permutation of the hypergraph's vertices")]
    BadOrdering,
    #[error("vertex #{0} is not a member of the set")]
    NotMember(usize),
    #[error("set is not a minimal transversal of the prefix hypergraph H_{0}")]
    NotMinimalTransversal(usize),
    #[error("support of Δ has {size} vertices, above the cap of {cap}")]
    SupportTooLarge { size: usize, cap: usize },
    #[error("extension oracle failed: {0}")]
    Oracle(String),
}

impl From<OracleError> for EngineError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { size, cap, .. } => EngineError::SupportTooLarge { size, cap },
        }
    }
}

/// `Δ_{i+1}`: the edges of `H_{i+1}` disjoint from `T*`. All of them contain `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaFamily {
    pub edges: Vec<VertexSet>,
}

impl DeltaFamily {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Union of the edges.
    pub fn support(&self, capacity: usize) -> VertexSet {
        let mut s = VertexSet::new(capacity);
        for e in &self.edges {
            s.union_with(e);
        }
        s
    }

    pub fn is_transversal(&self, x: &VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(x))
    }

    /// Transversal in which every member owns a private edge.
    pub fn is_minimal_transversal(&self, x: &VertexSet) -> bool {
        self.is_transversal(x)
            && x
                .iter()
                .all(|v| self.edges.iter().any(|e| e.contains(v) && e.intersection_len(x) == 1))
    }
}

/// A node `(T, i)` of the generation tree, with `T ∈ Tr(H_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSolution {
    pub t: VertexSet,
    pub i: usize,
}

/// A hypergraph together with a vertex order, with edges bucketed by the
/// position of their last vertex so prefix queries touch only relevant edges.
#[derive(Debug, Clone)]
pub struct OrderedHypergraph {
    h: Hypergraph,
    order: Vec<usize>,
    position: Vec<usize>,
    /// `buckets[p]`: edges whose latest vertex sits at position `p`.
    buckets: Vec<Vec<usize>>,
    has_empty_edge: bool,
}

impl OrderedHypergraph {
    pub fn new(h: Hypergraph, order: &[usize]) -> Result<Self, EngineError> {
        let n = h.vertex_count();
        if order.len() != n {
            return Err(EngineError::BadOrdering);
        }
        let mut position = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(EngineError::BadOrdering);
            }
            position[v] = p;
        }
        let mut buckets = vec![Vec::new(); n];
        let mut has_empty_edge = false;
        for (idx, e) in h.edges().iter().enumerate() {
            match e.iter().map(|v| position[v]).max() {
                Some(p) => buckets[p].push(idx),
                None => has_empty_edge = true,
            }
        }
        Ok(Self {
            h,
            order: order.to_vec(),
            position,
            buckets,
            has_empty_edge,
        })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// `v_{i+1}` in one-based terms, i.e. the vertex at zero-based position `i`.
    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i]
    }

    fn check_index(&self, i: usize) -> Result<(), EngineError> {
        if i > self.len() {
            Err(EngineError::BadIndex { i, n: self.len() })
        } else {
            Ok(())
        }
    }

    /// `V_i`.
    pub fn prefix_set(&self, i: usize) -> VertexSet {
        VertexSet::from_indices(self.len(), self.order[..i.min(self.len())].iter().copied())
    }

    /// Edges of `H_i`.
    pub fn prefix_edges(&self, i: usize) -> impl Iterator<Item = &VertexSet> + '_ {
        let h = &self.h;
        self.buckets[..i.min(self.len())]
            .iter()
            .flatten()
            .map(move |&idx| &h.edges()[idx])
    }

    /// Edges of `H_{i+1}` that are not in `H_i`.
    pub fn new_edges(&self, i: usize) -> impl Iterator<Item = &VertexSet> + '_ {
        let h = &self.h;
        self.buckets
            .get(i)
            .into_iter()
            .flatten()
            .map(move |&idx| &h.edges()[idx])
    }

    /// `H_i` as a standalone hypergraph over the same vertex ids.
    pub fn prefix_hypergraph(&self, i: usize) -> Result<Hypergraph, EngineError> {
        self.check_index(i)?;
        Ok(Hypergraph::new(
            self.h.names().to_vec(),
            self.prefix_edges(i).cloned().collect::<Vec<_>>(),
        ))
    }

    /// `priv_i(S, v)`: edges of `H_i` meeting `s` only in `v`.
    pub fn private_edges(&self, i: usize, s: &VertexSet, v: usize) -> Result<Vec<&VertexSet>, EngineError> {
        self.check_index(i)?;
        if !s.contains(v) {
            return Err(EngineError::NotMember(v));
        }
        Ok(self
            .prefix_edges(i)
            .filter(|e| e.contains(v) && e.intersection_len(s) == 1)
            .collect())
    }

    fn has_private_edge(&self, i: usize, s: &VertexSet, v: usize) -> bool {
        self.prefix_edges(i)
            .any(|e| e.contains(v) && e.intersection_len(s) == 1)
    }

    /// `t ∈ Tr(H_i)`, checked via transversality plus private edges.
    pub fn is_minimal_transversal(&self, t: &VertexSet, i: usize) -> bool {
        i <= self.len()
            && t.iter().all(|v| self.position[v] < i)
            && self.prefix_edges(i).all(|e| e.intersects(t))
            && t.iter().all(|v| self.has_private_edge(i, t, v))
    }

    /// `parent(T, i+1)`: repeatedly removes the earliest vertex of `T` with no
    /// private edge in `H_i`, rescanning from the start after every removal.
    pub fn parent(&self, t: &VertexSet, i_plus_1: usize) -> Result<VertexSet, EngineError> {
        if i_plus_1 == 0 {
            return Err(EngineError::BadIndex { i: 0, n: self.len() });
        }
        self.check_index(i_plus_1)?;
        if !self.is_minimal_transversal(t, i_plus_1) {
            return Err(EngineError::NotMinimalTransversal(i_plus_1));
        }
        Ok(self.parent_unchecked(t, i_plus_1 - 1))
    }

    fn parent_unchecked(&self, t: &VertexSet, i: usize) -> VertexSet {
        let mut cur = t.clone();
        'rescan: loop {
            let mut members: Vec<usize> = cur.to_vec();
            members.sort_by_key(|&v| self.position[v]);
            for v in members {
                if !self.has_private_edge(i, &cur, v) {
                    cur.remove(v);
                    continue 'rescan;
                }
            }
            return cur;
        }
    }

    /// `Δ_{i+1}` for `T* ∈ Tr(H_i)`: only the new edges of `H_{i+1}` can be missed.
    pub fn delta(&self, t_star: &VertexSet, i: usize) -> Result<DeltaFamily, EngineError> {
        if i >= self.len() {
            return Err(EngineError::BadIndex { i, n: self.len() });
        }
        Ok(DeltaFamily {
            edges: self
                .new_edges(i)
                .filter(|e| !e.intersects(t_star))
                .cloned()
                .collect(),
        })
    }

    /// `children(T*, i)`: `{T*}` when nothing is missed, otherwise the sets
    /// `T* ∪ X` over oracle extensions `X` that are minimal transversals of
    /// `H_{i+1}` with parent `T*`. Order follows the oracle.
    pub fn children<O: ExtensionOracle + ?Sized>(
        &self,
        t_star: &VertexSet,
        i: usize,
        oracle: &mut O,
    ) -> Result<Children, EngineError> {
        let delta = self.delta(t_star, i)?;
        if delta.is_empty() {
            return Ok(Children {
                sets: vec![t_star.clone()],
                pool_size: 0,
            });
        }
        let ext = oracle.extensions(&ExtensionRequest {
            ordered: self,
            t_star,
            i,
            delta: &delta,
        })?;
        let mut sets: Vec<VertexSet> = Vec::new();
        for x in ext.sets {
            let t = t_star.union(&x);
            if !self.is_minimal_transversal(&t, i + 1) {
                continue;
            }
            if self.parent_unchecked(&t, i) == *t_star && !sets.contains(&t) {
                sets.push(t);
            }
        }
        Ok(Children {
            sets,
            pool_size: ext.pool_size,
        })
    }

    /// Streams `Tr(H)` by depth-first traversal of the generation tree.
    pub fn enumerate<O: ExtensionOracle>(self, oracle: O) -> TransversalStream<O> {
        TransversalStream::new(self, oracle)
    }
}

/// `H_i` over the given order.
pub fn prefix_hypergraph(h: &Hypergraph, order: &[usize], i: usize) -> Result<Hypergraph, EngineError> {
    OrderedHypergraph::new(h.clone(), order)?.prefix_hypergraph(i)
}

/// Edges of `h_i` meeting `s` exactly in `{v}`.
pub fn private_edges(h_i: &Hypergraph, s: &VertexSet, v: usize) -> Result<Vec<VertexSet>, EngineError> {
    if !s.contains(v) {
        return Err(EngineError::NotMember(v));
    }
    Ok(h_i.private_edges(s, v).cloned().collect())
}

/// Children of a node, plus the oracle's candidate count for work accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Children {
    pub sets: Vec<VertexSet>,
    pub pool_size: usize,
}

/// Everything an oracle may consult when extending `(T*, i)`.
pub struct ExtensionRequest<'a> {
    pub ordered: &'a OrderedHypergraph,
    pub t_star: &'a VertexSet,
    pub i: usize,
    pub delta: &'a DeltaFamily,
}

impl ExtensionRequest<'_> {
    /// `v_{i+1}`.
    pub fn next_vertex(&self) -> usize {
        self.ordered.vertex_at(self.i)
    }
}

/// Output of one oracle call: the sets `X ∈ Tr(Δ_{i+1})` and how many
/// candidates were examined to produce them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Extensions {
    pub sets: Vec<VertexSet>,
    pub pool_size: usize,
}

/// Lists `Tr(Δ_{i+1})` for a node of the generation tree. Called only with a
/// non-empty `Δ`. Must emit each minimal transversal of `Δ` exactly once.
pub trait ExtensionOracle {
    fn extensions(&mut self, req: &ExtensionRequest<'_>) -> Result<Extensions, EngineError>;
}

impl<O: ExtensionOracle + ?Sized> ExtensionOracle for &mut O {
    fn extensions(&mut self, req: &ExtensionRequest<'_>) -> Result<Extensions, EngineError> {
        (**self).extensions(req)
    }
}

/// Exhaustive reference oracle: sweeps all subsets of `Δ`'s support.
#[derive(Debug, Clone, Copy)]
pub struct BruteExtensionOracle {
    pub cap: usize,
}

impl Default for BruteExtensionOracle {
    fn default() -> Self {
        Self { cap: 22 }
    }
}

impl ExtensionOracle for BruteExtensionOracle {
    fn extensions(&mut self, req: &ExtensionRequest<'_>) -> Result<Extensions, EngineError> {
        let support = req.delta.support(req.ordered.len());
        if support.len() > self.cap {
            return Err(EngineError::SupportTooLarge {
                size: support.len(),
                cap: self.cap,
            });
        }
        let sets = oracles::minimal_transversals_over(&req.delta.edges, &support, self.cap)?;
        Ok(Extensions {
            sets,
            pool_size: 1 << support.len(),
        })
    }
}

/// Work counters for one enumeration run. Work is counted in node expansions
/// plus oracle candidates, which makes delay measurable without clocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumStats {
    pub solutions: usize,
    pub nodes_expanded: usize,
    pub candidates: usize,
    pub max_pool: usize,
    /// Largest work spent before the first, between two, or after the last solution.
    pub max_delay: usize,
}

impl EnumStats {
    pub fn work(&self) -> usize {
        self.nodes_expanded + self.candidates
    }
}

struct Frame {
    /// Prefix index of the sets in `pending`.
    level: usize,
    /// Reversed, so `pop` yields oracle order.
    pending: Vec<VertexSet>,
}

/// Resumable depth-first stream over the generation tree.
pub struct TransversalStream<O> {
    ordered: OrderedHypergraph,
    oracle: O,
    stack: Vec<Frame>,
    stats: EnumStats,
    work_at_last_emit: usize,
    finished: bool,
}

impl<O: ExtensionOracle> TransversalStream<O> {
    fn new(ordered: OrderedHypergraph, oracle: O) -> Self {
        let n = ordered.len();
        let stack = if ordered.has_empty_edge {
            Vec::new()
        } else {
            vec![Frame {
                level: 0,
                pending: vec![VertexSet::new(n)],
            }]
        };
        Self {
            ordered,
            oracle,
            stack,
            stats: EnumStats::default(),
            work_at_last_emit: 0,
            finished: false,
        }
    }

    pub fn stats(&self) -> EnumStats {
        self.stats
    }

    pub fn ordered(&self) -> &OrderedHypergraph {
        &self.ordered
    }

    /// Work performed since the previous solution was emitted.
    pub fn work_since_last(&self) -> usize {
        self.stats.work() - self.work_at_last_emit
    }

    fn close_gap(&mut self) {
        let gap = self.work_since_last();
        self.stats.max_delay = self.stats.max_delay.max(gap);
        self.work_at_last_emit = self.stats.work();
    }

    fn finish(&mut self) {
        if !self.finished {
            self.finished = true;
            self.stack.clear();
            self.close_gap();
        }
    }
}

impl<O: ExtensionOracle> Iterator for TransversalStream<O> {
    type Item = Result<VertexSet, EngineError>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.ordered.len();
        loop {
            let Some(frame) = self.stack.last_mut() else {
                self.finish();
                return None;
            };
            let Some(t) = frame.pending.pop() else {
                self.stack.pop();
                continue;
            };
            let level = frame.level;
            if level == n {
                self.stats.solutions += 1;
                self.close_gap();
                return Some(Ok(t));
            }
            self.stats.nodes_expanded += 1;
            match self.ordered.children(&t, level, &mut self.oracle) {
                Ok(mut children) => {
                    self.stats.candidates += children.pool_size;
                    self.stats.max_pool = self.stats.max_pool.max(children.pool_size);
                    children.sets.reverse();
                    self.stack.push(Frame {
                        level: level + 1,
                        pending: children.sets,
                    });
                }
                Err(e) => {
                    self.finish();
                    return Some(Err(e));
                }
            }
        }
    }
}

/// Streams `Tr(h)` along `order` using `oracle` for the extension step.
pub fn enumerate_transversals<O: ExtensionOracle>(
    h: &Hypergraph,
    order: &[usize],
    oracle: O,
) -> Result<TransversalStream<O>, EngineError> {
    Ok(OrderedHypergraph::new(h.clone(), order)?.enumerate(oracle))
}
