//! Two hardness constructions, built concretely and checked against their
//! structural claims.
//!
//! * Multicolored independent set to the sequential method: a bipartite graph
//!   `H` with an ordering ending `α, β` and a partial solution `T*` whose
//!   children are the multicolored independent sets plus one.
//! * Hypergraph dualization to connected domination: the incidence graph of a
//!   Sperner hypergraph plus `v′` and `v★`.
//!
//! Gadget vertices are named `<role>:<index>:<owner>`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cdom::enumerate_mcds;
use crate::engine::{BruteExtensionOracle, EngineError, OrderedHypergraph};
use crate::extensions::NeighborhoodMode;
use crate::model::{bipartition, closed_neighborhood_hypergraph, open_neighborhood_hypergraph, Graph, Hypergraph, ModelError};
use crate::oracles::{self, Family, OracleCaps, OracleError};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("hypergraph has an empty edge")]
    EmptyEdge,
    #[error("hypergraph is not Sperner: an edge contains another")]
    NotSperner,
    #[error("connected dominating set does not contain v★")]
    MissingVStar,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A graph with its vertices partitioned into independent colour classes.
#[derive(Debug, Clone)]
pub struct MisInstance {
    pub g: Graph,
    pub classes: Vec<VertexSet>,
}

impl MisInstance {
    pub fn new(g: Graph, classes: Vec<VertexSet>) -> Result<Self, ReductionError> {
        let mut seen = g.empty_set();
        for (i, c) in classes.iter().enumerate() {
            if c.intersects(&seen) {
                return Err(ReductionError::InvalidPartition(format!("class {} overlaps an earlier class", i + 1)));
            }
            if !g.is_independent(c) {
                return Err(ReductionError::InvalidPartition(format!("class {} is not independent", i + 1)));
            }
            seen.union_with(c);
        }
        if seen != g.all_vertices() {
            let missing = g.names_of(&g.all_vertices().difference(&seen));
            return Err(ReductionError::InvalidPartition(format!("vertices {missing:?} are in no class")));
        }
        if let Some(bad) = g.names().iter().find(|s| s.contains(':')) {
            return Err(ReductionError::InvalidPartition(format!("vertex id `{bad}` clashes with gadget names")));
        }
        Ok(Self { g, classes })
    }

    /// Builds the instance from class lists of vertex ids.
    pub fn from_named<S: AsRef<str>>(g: Graph, classes: &[Vec<S>]) -> Result<Self, ReductionError> {
        let sets = classes
            .iter()
            .map(|c| g.set_of(c.iter().map(|s| s.as_ref())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, sets)
    }

    /// Independent sets with exactly one vertex in each class.
    pub fn multicolored_independent_sets(&self) -> Family {
        let mut out = Family::new();
        let classes: Vec<Vec<usize>> = self.classes.iter().map(|c| c.to_vec()).collect();
        let mut pick = self.g.empty_set();
        self.extend(&classes, 0, &mut pick, &mut out);
        out
    }

    fn extend(&self, classes: &[Vec<usize>], i: usize, pick: &mut VertexSet, out: &mut Family) {
        if i == classes.len() {
            out.insert(pick.clone());
            return;
        }
        for &v in &classes[i] {
            if !self.g.neighbors(v).intersects(pick) {
                pick.insert(v);
                self.extend(classes, i + 1, pick, out);
                pick.remove(v);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetRole {
    Original,
    Color,
    X(u8),
    Y(u8),
    Z(u8),
    Alpha,
    Beta,
}

#[derive(Debug, Clone)]
pub struct MisReduction {
    pub h: Graph,
    /// Every vertex of `h`, ending with `α, β`.
    pub ordering: Vec<usize>,
    pub t_star: VertexSet,
    pub roles: Vec<GadgetRole>,
    /// Index in `h` of each vertex of the original graph.
    pub original: Vec<usize>,
    pub alpha: usize,
    pub beta: usize,
}

impl MisReduction {
    /// Restricts a vertex set of `h` to the original graph's vertices.
    pub fn restrict_to_original(&self, s: &VertexSet, n: usize) -> VertexSet {
        VertexSet::from_indices(
            n,
            self.original.iter().enumerate().filter(|(_, &hv)| s.contains(hv)).map(|(v, _)| v),
        )
    }
}

pub fn build_mis_reduction(inst: &MisInstance) -> Result<MisReduction, ReductionError> {
    let g = &inst.g;
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut vertices: Vec<String> = g.names().to_vec();
    let mut t_star: Vec<String> = Vec::new();
    let mut push = |a: &str, b: &str| edges.push((a.to_owned(), b.to_owned()));

    for (i, class) in inst.classes.iter().enumerate() {
        let owner = format!("V{}", i + 1);
        let c = format!("c:{}:{owner}", i + 1);
        let x: Vec<String> = (1..=4).map(|j| format!("x:{j}:{owner}")).collect();
        for v in class {
            push(&c, g.name(v));
        }
        push(&x[0], &x[1]);
        push(&x[1], &x[2]);
        push(&x[2], &x[3]);
        push(&c, &x[3]);
        push("alpha:0:H", &c);
        t_star.extend([x[1].clone(), x[2].clone()]);
        vertices.push(c);
        vertices.extend(x);
    }
    for (u, v) in g.edges() {
        let owner = format!("{}-{}", g.name(u), g.name(v));
        let y: Vec<String> = (1..=5).map(|j| format!("y:{j}:{owner}")).collect();
        push(&y[0], &y[1]);
        push(&y[1], &y[2]);
        push(&y[2], &y[3]);
        push(&y[2], &y[4]);
        push(&y[3], g.name(u));
        push(&y[4], g.name(v));
        t_star.extend([y[1].clone(), y[2].clone()]);
        vertices.extend(y);
    }
    for v in 0..g.len() {
        let z: Vec<String> = (1..=4).map(|j| format!("z:{j}:{}", g.name(v))).collect();
        push(&z[0], &z[1]);
        push(&z[1], &z[2]);
        push(&z[2], &z[3]);
        push(g.name(v), &z[2]);
        t_star.extend([z[1].clone(), z[2].clone()]);
        vertices.extend(z);
    }
    push("beta:0:H", "alpha:0:H");
    vertices.extend(["alpha:0:H".to_owned(), "beta:0:H".to_owned()]);

    let h = Graph::new(vertices, edges)?;
    debug_assert!(bipartition(&h).ok().is_some());
    let alpha = h.vertex("alpha:0:H")?;
    let beta = h.vertex("beta:0:H")?;
    let mut ordering: Vec<usize> = (0..h.len()).filter(|&v| v != alpha && v != beta).collect();
    ordering.extend([alpha, beta]);
    let t_star = h.set_of(&t_star)?;
    let original = g.names().iter().map(|s| h.vertex(s)).collect::<Result<Vec<_>, _>>()?;
    let roles = h
        .names()
        .iter()
        .map(|s| {
            let mut parts = s.splitn(3, ':');
            let role = parts.next().unwrap_or_default();
            let idx: u8 = parts.next().and_then(|x| x.parse().ok()).unwrap_or(0);
            match role {
                "c" => GadgetRole::Color,
                "x" => GadgetRole::X(idx),
                "y" => GadgetRole::Y(idx),
                "z" => GadgetRole::Z(idx),
                "alpha" => GadgetRole::Alpha,
                "beta" => GadgetRole::Beta,
                _ => GadgetRole::Original,
            }
        })
        .collect();
    Ok(MisReduction {
        h,
        ordering,
        t_star,
        roles,
        original,
        alpha,
        beta,
    })
}

#[derive(Debug, Clone)]
pub struct MisChildrenReport {
    pub mode: NeighborhoodMode,
    pub bipartite: bool,
    /// `T*` is a minimal transversal of the `(n-2)`-prefix hypergraph.
    pub t_star_minimal: bool,
    pub children: Vec<VertexSet>,
    pub alpha_child: bool,
    /// Non-`α` children, restricted to the original graph.
    pub independent_set_children: Family,
    pub multicolored_independent_sets: Family,
}

impl MisChildrenReport {
    pub fn children_match(&self) -> bool {
        self.alpha_child
            && self.children.len() == self.multicolored_independent_sets.len() + 1
            && self.independent_set_children == self.multicolored_independent_sets
    }

    pub fn holds(&self) -> bool {
        self.bipartite && self.t_star_minimal && self.children_match()
    }
}

/// Runs `children(T*, n-2)` on the mode's neighborhood hypergraph of `H`
/// and compares against the multicolored independent sets.
pub fn verify_mis_children(
    inst: &MisInstance,
    red: &MisReduction,
    mode: NeighborhoodMode,
) -> Result<MisChildrenReport, ReductionError> {
    let hyper = match mode {
        NeighborhoodMode::Closed => closed_neighborhood_hypergraph(&red.h),
        NeighborhoodMode::Open => open_neighborhood_hypergraph(&red.h)?,
    };
    let ordered = OrderedHypergraph::new(hyper, &red.ordering)?;
    let i = red.h.len() - 2;
    let t_star_minimal = ordered.is_minimal_transversal(&red.t_star, i);
    let children = if t_star_minimal {
        ordered.children(&red.t_star, i, &mut BruteExtensionOracle::default())?.sets
    } else {
        Vec::new()
    };
    let alpha_set = red.t_star.with(red.alpha);
    let alpha_child = children.contains(&alpha_set);
    let independent_set_children = children
        .iter()
        .filter(|c| **c != alpha_set)
        .map(|c| red.restrict_to_original(c, inst.g.len()))
        .collect();
    Ok(MisChildrenReport {
        mode,
        bipartite: bipartition(&red.h).ok().is_some(),
        t_star_minimal,
        children,
        alpha_child,
        independent_set_children,
        multicolored_independent_sets: inst.multicolored_independent_sets(),
    })
}

/// The connected-domination instance built from a hypergraph.
#[derive(Debug, Clone)]
pub struct TransversalReduction {
    pub h: Hypergraph,
    pub g: Graph,
    /// `v_i` in `g` for each vertex `u_i` of `h`.
    pub vertex_of: Vec<usize>,
    /// `e_j` in `g` for each edge `E_j` of `h`.
    pub edge_of: Vec<usize>,
    pub v_prime: usize,
    pub v_star: usize,
}

pub fn build_transversal_reduction(h: &Hypergraph) -> Result<TransversalReduction, ReductionError> {
    if h.edges().iter().any(|e| e.is_empty()) {
        return Err(ReductionError::EmptyEdge);
    }
    if !h.is_sperner() {
        return Err(ReductionError::NotSperner);
    }
    let vname = |i: usize| format!("v:{}:{}", i + 1, h.name(i));
    let ename = |j: usize| format!("e:{}:H", j + 1);
    let mut vertices: Vec<String> = (0..h.vertex_count()).map(vname).collect();
    vertices.extend((0..h.edge_count()).map(ename));
    vertices.extend(["vprime:0:H".to_owned(), "vstar:0:H".to_owned()]);
    let mut edges: Vec<(String, String)> = Vec::new();
    for (j, e) in h.edges().iter().enumerate() {
        for i in e {
            edges.push((vname(i), ename(j)));
        }
    }
    edges.push(("vprime:0:H".into(), "vstar:0:H".into()));
    for i in 0..h.vertex_count() {
        edges.push(("vstar:0:H".into(), vname(i)));
    }
    let g = Graph::new(vertices, edges)?;
    Ok(TransversalReduction {
        vertex_of: (0..h.vertex_count()).map(|i| g.vertex(&vname(i))).collect::<Result<_, _>>()?,
        edge_of: (0..h.edge_count()).map(|j| g.vertex(&ename(j))).collect::<Result<_, _>>()?,
        v_prime: g.vertex("vprime:0:H")?,
        v_star: g.vertex("vstar:0:H")?,
        h: h.clone(),
        g,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorReport {
    pub expected: Family,
    pub actual: Family,
}

impl SeparatorReport {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// Compares the brute-force minimal separators of the reduction graph with
/// `{N(e_j)} ∪ {{v★}}`.
pub fn verify_separator_structure(red: &TransversalReduction, caps: &OracleCaps) -> Result<SeparatorReport, ReductionError> {
    let mut expected: Family = red.edge_of.iter().map(|&e| red.g.neighbors(e).clone()).collect();
    expected.insert(VertexSet::from_indices(red.g.len(), [red.v_star]));
    let actual = oracles::brute_separators(&red.g, true, caps)?;
    Ok(SeparatorReport { expected, actual })
}

/// `T_G ↦ {u_i : v_i ∈ T_G \ {v★}}`.
pub fn mcds_to_transversal(t_g: &VertexSet, red: &TransversalReduction) -> Result<VertexSet, ReductionError> {
    if !t_g.contains(red.v_star) {
        return Err(ReductionError::MissingVStar);
    }
    Ok(VertexSet::from_indices(
        red.h.vertex_count(),
        red.vertex_of.iter().enumerate().filter(|(_, &v)| t_g.contains(v)).map(|(i, _)| i),
    ))
}

#[derive(Debug, Clone)]
pub struct BijectionReport {
    pub mcds_count: usize,
    pub transversal_count: usize,
    /// Images that are not minimal transversals of `h`.
    pub bad_images: Vec<VertexSet>,
    pub injective: bool,
    pub onto: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.mcds_count == self.transversal_count && self.bad_images.is_empty() && self.injective && self.onto
    }
}

/// Maps every minimal connected dominating set of the reduction graph to
/// `h` and checks that this is a bijection onto `Tr(h)`.
pub fn verify_bijection(red: &TransversalReduction, caps: &OracleCaps) -> Result<BijectionReport, ReductionError> {
    let mcds: Family = match oracles::brute_mcds(&red.g, caps) {
        Ok(f) => f,
        Err(OracleError::TooLarge { .. }) => enumerate_mcds(&red.g)
            .map_err(|e| ReductionError::InvalidPartition(e.to_string()))?
            .map(|t| t.set)
            .collect(),
    };
    let tr = oracles::brute_transversals(&red.h, caps)?;
    let mut images = BTreeSet::new();
    let mut bad_images = Vec::new();
    for t in &mcds {
        let img = mcds_to_transversal(t, red)?;
        if !red.h.is_minimal_transversal(&img) {
            bad_images.push(img.clone());
        }
        images.insert(img);
    }
    Ok(BijectionReport {
        mcds_count: mcds.len(),
        transversal_count: tr.len(),
        bad_images,
        injective: images.len() == mcds.len(),
        onto: images == tr,
    })
}
