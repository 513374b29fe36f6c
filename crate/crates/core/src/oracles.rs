//! Exhaustive reference implementations.
//!
//! Everything here sweeps subsets of the vertex set, so every entry point is
//! guarded by a size cap. Exceeding a cap is an error, never a truncation.
//! `DOMENUM_ORACLE_CAP` overrides all caps at once.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{Graph, Hypergraph};
use crate::set::VertexSet;

/// A family of vertex sets in canonical order.
pub type Family = BTreeSet<VertexSet>;

pub const ORACLE_CAP_ENV: &str = "DOMENUM_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub dominating: usize,
    pub connected: usize,
    pub transversals: usize,
    pub separators: usize,
    pub conformality: usize,
    pub induced_cycles: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            dominating: 20,
            connected: 14,
            transversals: 22,
            separators: 14,
            conformality: 15,
            induced_cycles: 14,
        }
    }
}

impl OracleCaps {
    pub fn uniform(cap: usize) -> Self {
        Self {
            dominating: cap,
            connected: cap,
            transversals: cap,
            separators: cap,
            conformality: cap,
            induced_cycles: cap,
        }
    }

    /// Defaults, or a uniform cap taken from `DOMENUM_ORACLE_CAP`.
    pub fn from_env() -> Self {
        std::env::var(ORACLE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, Self::uniform)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what}: {size} vertices exceeds the oracle cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

const MAX_MASK_BITS: usize = 40;

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(MAX_MASK_BITS);
    if size > cap {
        Err(OracleError::TooLarge { what, size, cap })
    } else {
        Ok(())
    }
}

fn to_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn from_mask(capacity: usize, mask: u64) -> VertexSet {
    VertexSet::from_indices(capacity, bits(mask))
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// All masks over `n` bits, by increasing cardinality then numeric value.
fn masks_by_size(n: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..1u64 << n).collect();
    all.sort_by_key(|&m| (m.count_ones(), m));
    all
}

fn union_of(masks: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | masks[v])
}

/// Minimal sets `D` with `⋃_{v∈D} cover[v] = all`, via single-removal minimality.
fn minimal_covers(cover: &[u64], all: u64) -> Vec<u64> {
    let n = cover.len();
    let mut out = Vec::new();
    for d in 0..1u64 << n {
        if union_of(cover, d) != all {
            continue;
        }
        if bits(d).all(|v| union_of(cover, d & !(1 << v)) != all) {
            out.push(d);
        }
    }
    out
}

fn graph_masks(g: &Graph, closed: bool) -> Vec<u64> {
    (0..g.len())
        .map(|v| {
            let m = to_mask(g.neighbors(v));
            if closed {
                m | 1 << v
            } else {
                m
            }
        })
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// All minimal dominating sets.
pub fn brute_mds(g: &Graph, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_mds", g.len(), caps.dominating)?;
    let cover = graph_masks(g, true);
    Ok(minimal_covers(&cover, full_mask(g.len()))
        .into_iter()
        .map(|m| from_mask(g.len(), m))
        .collect())
}

/// All minimal total dominating sets; empty when `g` has an isolated vertex.
pub fn brute_mtds(g: &Graph, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_mtds", g.len(), caps.dominating)?;
    if g.isolated_vertices().next().is_some() {
        return Ok(Family::new());
    }
    let cover = graph_masks(g, false);
    Ok(minimal_covers(&cover, full_mask(g.len()))
        .into_iter()
        .map(|m| from_mask(g.len(), m))
        .collect())
}

fn mask_connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = set & set.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let grown = union_of(adj, frontier) & set & !seen;
        seen |= grown;
        frontier = grown;
    }
    seen == set
}

/// All minimal connected dominating sets. Minimality is checked against every
/// proper subset, since connectivity is not monotone.
pub fn brute_mcds(g: &Graph, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_mcds", g.len(), caps.connected)?;
    let n = g.len();
    let closed = graph_masks(g, true);
    let open = graph_masks(g, false);
    let all = full_mask(n);
    let mut found: Vec<u64> = Vec::new();
    for d in masks_by_size(n) {
        if union_of(&closed, d) != all || !mask_connected(&open, d) {
            continue;
        }
        if found.iter().any(|&f| f & !d == 0) {
            continue;
        }
        found.push(d);
    }
    Ok(found.into_iter().map(|m| from_mask(n, m)).collect())
}

/// Minimal transversals of `edges` restricted to `support`, by subset sweep.
/// Results are ordered by cardinality, then lexicographically.
pub fn minimal_transversals_over(
    edges: &[VertexSet],
    support: &VertexSet,
    cap: usize,
) -> Result<Vec<VertexSet>, OracleError> {
    let local: Vec<usize> = support.to_vec();
    check_cap("minimal transversals", local.len(), cap)?;
    let capacity = support.capacity();
    let edge_masks: Vec<u64> = edges
        .iter()
        .map(|e| {
            local
                .iter()
                .enumerate()
                .filter(|(_, &v)| e.contains(v))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let mut out = Vec::new();
    for t in 0..1u64 << local.len() {
        if edge_masks.iter().any(|&e| e & t == 0) {
            continue;
        }
        let minimal = bits(t).all(|v| edge_masks.iter().any(|&e| e & t == 1 << v));
        if minimal {
            out.push(VertexSet::from_indices(capacity, bits(t).map(|i| local[i])));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Tr(h) by subset sweep with a private-edge minimality certificate.
pub fn brute_transversals(h: &Hypergraph, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_transversals", h.vertex_count(), caps.transversals)?;
    let all = VertexSet::full(h.vertex_count());
    Ok(minimal_transversals_over(h.edges(), &all, caps.transversals)?
        .into_iter()
        .collect())
}

/// All separators of `g` (vertex sets whose removal leaves a disconnected
/// graph), or only the inclusion-minimal ones.
pub fn brute_separators(g: &Graph, minimal_only: bool, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_separators", g.len(), caps.separators)?;
    let n = g.len();
    let adj = graph_masks(g, false);
    let all = full_mask(n);
    let mut minimal: Vec<u64> = Vec::new();
    let mut every: Vec<u64> = Vec::new();
    for s in masks_by_size(n) {
        if mask_connected(&adj, all & !s) {
            continue;
        }
        every.push(s);
        if !minimal.iter().any(|&f| f & !s == 0) {
            minimal.push(s);
        }
    }
    let pick = if minimal_only { minimal } else { every };
    Ok(pick.into_iter().map(|m| from_mask(n, m)).collect())
}

/// Inclusion-minimal sets separating `a` from `b` (neither in the set).
pub fn brute_ab_separators(g: &Graph, a: usize, b: usize, caps: &OracleCaps) -> Result<Family, OracleError> {
    check_cap("brute_ab_separators", g.len(), caps.separators)?;
    let n = g.len();
    let adj = graph_masks(g, false);
    let all = full_mask(n);
    let ends = 1u64 << a | 1u64 << b;
    let mut found: Vec<u64> = Vec::new();
    for s in masks_by_size(n) {
        if s & ends != 0 {
            continue;
        }
        let rest = all & !s;
        let mut reach = 1u64 << a;
        let mut frontier = reach;
        while frontier != 0 {
            let grown = union_of(&adj, frontier) & rest & !reach;
            reach |= grown;
            frontier = grown;
        }
        if reach & 1 << b != 0 {
            continue;
        }
        if !found.iter().any(|&f| f & !s == 0) {
            found.push(s);
        }
    }
    Ok(found.into_iter().map(|m| from_mask(n, m)).collect())
}

/// Result of a conformality computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conformality {
    /// The least `c` for which the property holds.
    Exactly(usize),
    AboveMax,
}

/// Literal sweep: conformality `c` holds when every `X` whose subsets of size
/// at most `c` all lie inside some hyperedge itself lies inside one. Vertices
/// outside every hyperedge are never part of such an `X` and are skipped.
pub fn brute_conformality(h: &Hypergraph, c_max: usize, caps: &OracleCaps) -> Result<Conformality, OracleError> {
    let local = h.support().to_vec();
    check_cap("brute_conformality", local.len(), caps.conformality)?;
    let k = local.len();
    let size = 1usize << k;
    let mut covered = vec![false; size];
    for e in h.edges() {
        let m = local
            .iter()
            .enumerate()
            .filter(|(_, &v)| e.contains(v))
            .fold(0usize, |m, (i, _)| m | 1 << i);
        covered[m] = true;
    }
    // Downward closure: X is covered if some superset X+v is.
    for x in (0..size).rev() {
        if covered[x] {
            continue;
        }
        covered[x] = (0..k).any(|v| x & 1 << v == 0 && covered[x | 1 << v]);
    }
    for c in 1..=c_max {
        // small_ok[X]: every subset of X with at most c elements is covered.
        let mut small_ok = vec![false; size];
        let mut violated = false;
        for x in 0..size {
            small_ok[x] = if (x.count_ones() as usize) <= c {
                covered[x]
            } else {
                (0..k).all(|v| x & 1 << v == 0 || small_ok[x & !(1 << v)])
            };
            if small_ok[x] && !covered[x] {
                violated = true;
                break;
            }
        }
        if !violated {
            return Ok(Conformality::Exactly(c));
        }
    }
    Ok(Conformality::AboveMax)
}

/// A shortest induced cycle with at least `min_len` vertices, listed in cycle order.
pub fn has_long_induced_cycle(g: &Graph, min_len: usize, caps: &OracleCaps) -> Result<Option<Vec<usize>>, OracleError> {
    check_cap("has_long_induced_cycle", g.len(), caps.induced_cycles)?;
    let n = g.len();
    let adj = graph_masks(g, false);
    for s in masks_by_size(n) {
        if (s.count_ones() as usize) < min_len.max(3) {
            continue;
        }
        let two_regular = bits(s).all(|v| (adj[v] & s).count_ones() == 2);
        if two_regular && mask_connected(&adj, s) {
            return Ok(Some(walk_cycle(&adj, s)));
        }
    }
    Ok(None)
}

fn walk_cycle(adj: &[u64], s: u64) -> Vec<usize> {
    let start = s.trailing_zeros() as usize;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = bits(adj[start] & s).next().expect("2-regular");
    while cur != start {
        cycle.push(cur);
        let next = bits(adj[cur] & s & !(1 << prev)).next().expect("2-regular");
        prev = cur;
        cur = next;
    }
    cycle
}

/// Definition-level chordal bipartite test: bipartite with no induced cycle of
/// length six or more.
pub fn is_chordal_bipartite_by_definition(g: &Graph, caps: &OracleCaps) -> Result<bool, OracleError> {
    if crate::model::bipartition(g).ok().is_none() {
        return Ok(false);
    }
    Ok(has_long_induced_cycle(g, 6, caps)?.is_none())
}
