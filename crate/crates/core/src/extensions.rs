//! Polynomial extension oracles for chordal bipartite graphs.
//!
//! Along a weak-simplicial elimination ordering every edge of `Δ_{i+1}` is the
//! (closed or open) neighborhood of `v_{i+1}` or of one of its neighbors, and
//! the vertices involved induce a bipartite chain graph around `v_{i+1}`. In
//! that setting `Tr(Δ_{i+1})` has polynomially many members, each drawn from
//! a small candidate pool:
//!
//! * closed neighborhoods: `{v_{i+1}}`, the blue set `B`, red subsets of size at
//!   most two, and `{r} ∪ (B \ N(r))` for `r ∈ N²(v_{i+1})`;
//! * open neighborhoods: subsets of size at most two of `N[v_{i+1}] ∪ N²(v_{i+1})`.
//!
//! Candidates are kept when they are minimal transversals of `Δ_{i+1}`.

use thiserror::Error;

use crate::cdom::incremental_dualize;
use crate::engine::{
    DeltaFamily, EngineError, ExtensionOracle, ExtensionRequest, Extensions, OrderedHypergraph,
    TransversalStream,
};
use crate::model::{closed_neighborhood_hypergraph, open_neighborhood_hypergraph, Graph, Hypergraph, ModelError};
use crate::recognition::{chain_orders, weak_simplicial_ordering, ChainCheck, ChainOrders};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborhoodMode {
    /// `N[v]`: minimal dominating sets.
    Closed,
    /// `N(v)`: minimal total dominating sets.
    Open,
}

impl NeighborhoodMode {
    pub fn neighborhood(self, g: &Graph, v: usize) -> VertexSet {
        match self {
            NeighborhoodMode::Closed => g.closed_neighbors(v),
            NeighborhoodMode::Open => g.neighbors(v).clone(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("graph is not chordal bipartite")]
    NotChordalBipartite,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("vertices `{0}` and `{1}` break the bipartite chain around the next vertex; the ordering is not a weak-simplicial elimination ordering")]
    NotChain(String, String),
    #[error("Δ is empty; the only child is T* itself")]
    EmptyDelta,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The coloured bipartite-chain instance around `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainInstance {
    pub mode: NeighborhoodMode,
    pub v_next: usize,
    /// `B`: neighbors of `v_{i+1}` whose neighborhood is an edge of `Δ_{i+1}`.
    pub blue: VertexSet,
    /// `R`: the rest of `⋃Δ_{i+1}`.
    pub red: VertexSet,
    /// `X = (R ∪ B) ∩ N(v_{i+1})`.
    pub x_side: VertexSet,
    /// `Y = (R ∪ B) \ N[v_{i+1}]`.
    pub y_side: VertexSet,
    pub orders: ChainOrders,
    /// `N(v_{i+1}) ∩ V_{i+1}`.
    pub first: VertexSet,
    /// `N²(v_{i+1}) ∩ V_{i+1}`.
    pub second: VertexSet,
    /// Neighbors of `v_{i+1}` outside `V_{i+1}` whose open neighborhood is an
    /// edge of `Δ_{i+1}`. Always empty for closed neighborhoods.
    pub outer: VertexSet,
}

fn chain_instance_for(
    g: &Graph,
    ordered: &OrderedHypergraph,
    i: usize,
    delta: &DeltaFamily,
    mode: NeighborhoodMode,
) -> Result<ChainInstance, ExtensionError> {
    let v = ordered.vertex_at(i);
    let prefix = ordered.prefix_set(i + 1);
    let first = g.neighbors(v).intersection(&prefix);
    let second = g.second_neighbors(v).intersection(&prefix);
    let blue = VertexSet::from_indices(
        g.len(),
        first
            .iter()
            .filter(|&u| delta.edges.contains(&mode.neighborhood(g, u))),
    );
    let outer = VertexSet::from_indices(
        g.len(),
        g.neighbors(v)
            .difference(&prefix)
            .iter()
            .filter(|&u| delta.edges.contains(&mode.neighborhood(g, u))),
    );
    let red = delta.support(g.len()).difference(&blue);
    let both = red.union(&blue);
    let x_side = both.intersection(g.neighbors(v));
    let y_side = both.difference(&g.closed_neighbors(v));
    debug_assert!(red.without(v).is_subset(&first.union(&second)));
    let orders = match chain_orders(g, &x_side, &y_side) {
        ChainCheck::Chain(orders) => orders,
        ChainCheck::NotChain { witness: (a, b) } => {
            return Err(ExtensionError::NotChain(g.name(a).to_owned(), g.name(b).to_owned()))
        }
    };
    Ok(ChainInstance {
        mode,
        v_next: v,
        blue,
        red,
        x_side,
        y_side,
        orders,
        first,
        second,
        outer,
    })
}

fn mode_hypergraph(g: &Graph, mode: NeighborhoodMode) -> Result<crate::Hypergraph, ExtensionError> {
    Ok(match mode {
        NeighborhoodMode::Closed => closed_neighborhood_hypergraph(g),
        NeighborhoodMode::Open => open_neighborhood_hypergraph(g)?,
    })
}

/// Builds `Δ_{i+1}` and its chain instance for `(T*, i)` along `order`.
pub fn build_chain_instance(
    g: &Graph,
    order: &[usize],
    t_star: &VertexSet,
    i: usize,
    mode: NeighborhoodMode,
) -> Result<(ChainInstance, DeltaFamily), ExtensionError> {
    let ordered = OrderedHypergraph::new(mode_hypergraph(g, mode)?, order)?;
    let delta = ordered.delta(t_star, i)?;
    let ci = chain_instance_for(g, &ordered, i, &delta, mode)?;
    Ok((ci, delta))
}

/// Candidate pool for closed neighborhoods, in generation order (may repeat).
fn mds_pool(g: &Graph, ci: &ChainInstance) -> Vec<VertexSet> {
    let n = g.len();
    let v = ci.v_next;
    let mut pool = vec![VertexSet::from_indices(n, [v])];
    if !ci.blue.is_empty() {
        pool.push(ci.blue.clone());
    }
    let red: Vec<usize> = ci.red.to_vec();
    for (k, &a) in red.iter().enumerate() {
        pool.push(VertexSet::from_indices(n, [a]));
        for &b in &red[k + 1..] {
            if ci.first.contains(a) && ci.first.contains(b) {
                continue;
            }
            pool.push(VertexSet::from_indices(n, [a, b]));
        }
    }
    for r in &ci.second {
        let mut z = ci.blue.difference(g.neighbors(r));
        z.insert(r);
        pool.push(z);
        for b in &ci.blue.intersection(g.neighbors(r)) {
            pool.push(VertexSet::from_indices(n, [r, b]));
        }
    }
    pool
}

/// Candidate pool for open neighborhoods: all non-empty subsets of size at most
/// two of `(N[v] ∪ N²(v)) ∩ V_{i+1}`. Edges coming from neighbors outside
/// `V_{i+1}` are not covered by that pool, so when there are any the minimal
/// transversals of `{E \ {v} : E ∈ Δ}` are added as well.
fn tds_pool(g: &Graph, ci: &ChainInstance, delta: &DeltaFamily) -> Vec<VertexSet> {
    let n = g.len();
    let mut ground = ci.first.union(&ci.second);
    ground.insert(ci.v_next);
    let ground: Vec<usize> = ground.to_vec();
    let mut pool = Vec::with_capacity(ground.len() * (ground.len() + 1) / 2);
    for (k, &a) in ground.iter().enumerate() {
        pool.push(VertexSet::from_indices(n, [a]));
        for &b in &ground[k + 1..] {
            pool.push(VertexSet::from_indices(n, [a, b]));
        }
    }
    if !ci.outer.is_empty() {
        let rest = delta.edges.iter().map(|e| e.without(ci.v_next));
        let h = Hypergraph::new(g.names().to_vec(), rest);
        pool.extend(incremental_dualize(&h).map(|t| t.set));
    }
    pool
}

fn validate(pool: Vec<VertexSet>, delta: &DeltaFamily) -> Extensions {
    let pool_size = pool.len();
    let mut sets: Vec<VertexSet> = Vec::new();
    for z in pool {
        if delta.is_minimal_transversal(&z) && !sets.contains(&z) {
            sets.push(z);
        }
    }
    Extensions { sets, pool_size }
}

/// `Tr(Δ_{i+1})` for closed neighborhoods.
pub fn mds_extensions(g: &Graph, ci: &ChainInstance, delta: &DeltaFamily) -> Result<Extensions, ExtensionError> {
    if delta.is_empty() {
        return Err(ExtensionError::EmptyDelta);
    }
    Ok(validate(mds_pool(g, ci), delta))
}

/// `Tr(Δ_{i+1})` for open neighborhoods.
pub fn tds_extensions(g: &Graph, ci: &ChainInstance, delta: &DeltaFamily) -> Result<Extensions, ExtensionError> {
    if delta.is_empty() {
        return Err(ExtensionError::EmptyDelta);
    }
    Ok(validate(tds_pool(g, ci, delta), delta))
}

/// The four shapes a closed-neighborhood extension can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionCase {
    /// `Z = {v_{i+1}}`.
    Pivot,
    /// `Z ⊆ B`, hence `Z = B`.
    Blue,
    /// `Z ⊆ R` and `|Z| ≤ 2`.
    Red,
    /// `Z = {r} ∪ (B \ N(r))` with `r ∈ N²(v_{i+1})`.
    BlueRed { r: usize },
}

/// The regions an extension falls in, using disjoint membership conditions:
/// `Z = {v}`; `Z ⊆ B`; `Z ⊆ R` with `Z ≠ {v}`; `Z` meeting both `B` and `R`.
/// A well-formed extension lies in exactly one.
pub fn case_regions(ci: &ChainInstance, z: &VertexSet) -> Vec<ExtensionCase> {
    let pivot = z.len() == 1 && z.contains(ci.v_next);
    let mut regions = Vec::new();
    if pivot {
        regions.push(ExtensionCase::Pivot);
    }
    if !z.is_empty() && z.is_subset(&ci.blue) {
        regions.push(ExtensionCase::Blue);
    }
    if !pivot && !z.is_empty() && z.is_subset(&ci.red) {
        regions.push(ExtensionCase::Red);
    }
    if z.intersects(&ci.blue) && z.intersects(&ci.red) {
        let r = z.intersection(&ci.red).first().expect("intersects");
        regions.push(ExtensionCase::BlueRed { r });
    }
    regions
}

/// The unique case of `z`, provided it lies in exactly one region and has
/// that region's shape.
pub fn classify_mds_extension(g: &Graph, ci: &ChainInstance, z: &VertexSet) -> Option<ExtensionCase> {
    let regions = case_regions(ci, z);
    let [case] = regions.as_slice() else {
        return None;
    };
    let shape = match *case {
        ExtensionCase::Pivot => true,
        ExtensionCase::Blue => *z == ci.blue,
        ExtensionCase::Red => z.len() <= 2,
        ExtensionCase::BlueRed { .. } => {
            let reds = z.intersection(&ci.red);
            reds.len() == 1 && {
                let r = reds.first().expect("one red");
                ci.second.contains(r) && *z == ci.blue.difference(g.neighbors(r)).with(r)
            }
        }
    };
    shape.then_some(*case)
}

/// `|Z ∩ R ∩ N(v_{i+1})| ≤ 1` and `|Z ∩ N²(v_{i+1})| ≤ 1`.
pub fn red_part_holds(ci: &ChainInstance, z: &VertexSet) -> bool {
    z.intersection(&ci.red).intersection_len(&ci.first) <= 1 && z.intersection_len(&ci.second) <= 1
}

/// `Z = {r, b}` with `r ∈ N²(v_{i+1})`, `b ∈ B ∩ N(r)`, `B ⊆ N(r)` and
/// `N[v_{i+1}] ∈ Δ`: `r` hits every `N[b']`, and `b` keeps `N[v_{i+1}]` as
/// its private edge. Such extensions exist but fit none of the four shapes.
pub fn is_blue_pair(g: &Graph, ci: &ChainInstance, delta: &DeltaFamily, z: &VertexSet) -> bool {
    let (reds, blues) = (z.intersection(&ci.second), z.intersection(&ci.blue));
    z.len() == 2
        && reds.len() == 1
        && blues.len() == 1
        && {
            let r = reds.first().expect("one red");
            blues.is_subset(g.neighbors(r)) && ci.blue.is_subset(g.neighbors(r))
        }
        && delta.edges.contains(&ci.mode.neighborhood(g, ci.v_next))
}

/// One oracle call captured for offline checking.
#[derive(Debug, Clone)]
pub struct HarvestedNode {
    pub t_star: VertexSet,
    pub i: usize,
    pub delta: DeltaFamily,
    pub instance: ChainInstance,
    pub extensions: Vec<VertexSet>,
    pub pool_size: usize,
}

/// Extension oracle backed by the chain-instance candidate pools.
pub struct DominationOracle<'g> {
    g: &'g Graph,
    mode: NeighborhoodMode,
    harvest: Option<Vec<HarvestedNode>>,
}

impl<'g> DominationOracle<'g> {
    pub fn new(g: &'g Graph, mode: NeighborhoodMode) -> Self {
        Self { g, mode, harvest: None }
    }

    /// Like [`DominationOracle::new`], but keeps a copy of every call.
    pub fn recording(g: &'g Graph, mode: NeighborhoodMode) -> Self {
        Self {
            g,
            mode,
            harvest: Some(Vec::new()),
        }
    }

    pub fn harvested(&self) -> &[HarvestedNode] {
        self.harvest.as_deref().unwrap_or(&[])
    }

    pub fn take_harvest(&mut self) -> Vec<HarvestedNode> {
        self.harvest.as_mut().map(std::mem::take).unwrap_or_default()
    }
}

impl ExtensionOracle for DominationOracle<'_> {
    fn extensions(&mut self, req: &ExtensionRequest<'_>) -> Result<Extensions, EngineError> {
        let ci = chain_instance_for(self.g, req.ordered, req.i, req.delta, self.mode)
            .map_err(|e| EngineError::Oracle(e.to_string()))?;
        let ext = match self.mode {
            NeighborhoodMode::Closed => mds_extensions(self.g, &ci, req.delta),
            NeighborhoodMode::Open => tds_extensions(self.g, &ci, req.delta),
        }
        .map_err(|e| EngineError::Oracle(e.to_string()))?;
        if let Some(h) = self.harvest.as_mut() {
            h.push(HarvestedNode {
                t_star: req.t_star.clone(),
                i: req.i,
                delta: req.delta.clone(),
                instance: ci,
                extensions: ext.sets.clone(),
                pool_size: ext.pool_size,
            });
        }
        Ok(ext)
    }
}

pub type DominationStream<'g> = TransversalStream<DominationOracle<'g>>;

/// Sets up the sequential enumeration for `mode` along the graph's
/// weak-simplicial elimination ordering, using `oracle` for extensions.
pub fn domination_stream<O: ExtensionOracle>(
    g: &Graph,
    mode: NeighborhoodMode,
    oracle: O,
) -> Result<TransversalStream<O>, ExtensionError> {
    let h = mode_hypergraph(g, mode)?;
    let ordering = weak_simplicial_ordering(g).ok_or(ExtensionError::NotChordalBipartite)?;
    Ok(OrderedHypergraph::new(h, ordering.as_slice())?.enumerate(oracle))
}

/// Streams the minimal dominating sets of a chordal bipartite graph.
pub fn enumerate_mds(g: &Graph) -> Result<DominationStream<'_>, ExtensionError> {
    domination_stream(g, NeighborhoodMode::Closed, DominationOracle::new(g, NeighborhoodMode::Closed))
}

/// Streams the minimal total dominating sets of a chordal bipartite graph
/// without isolated vertices.
pub fn enumerate_mtds(g: &Graph) -> Result<DominationStream<'_>, ExtensionError> {
    domination_stream(g, NeighborhoodMode::Open, DominationOracle::new(g, NeighborhoodMode::Open))
}
