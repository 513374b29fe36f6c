//! Seeded random chordal bipartite graphs.
//!
//! Vertices `v_1..v_n` are added in order. Each new vertex receives an
//! independent set of earlier vertices whose current neighborhoods form an
//! inclusion chain, so it is weak-simplicial on arrival and the insertion
//! order is a weak-simplicial elimination ordering.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::Graph;
use crate::recognition::is_chordal_bipartite;
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("n must be at least 1")]
    Empty,
    #[error("density {0} is outside [0, 1]")]
    BadDensity(f64),
    #[error("generated graph failed recognition")]
    GenerationFailed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Expected degree of the new vertex is `density * (i - 1)`, before the
    /// independence and chain constraints thin it out.
    pub density: f64,
    pub seed: u64,
    /// Give every vertex after the first at least one earlier neighbor.
    pub connected: bool,
    /// Random subsets tried before falling back to greedy thinning.
    pub retries: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize, density: f64, seed: u64) -> Self {
        Self {
            n,
            density,
            seed,
            connected: false,
            retries: 20,
        }
    }

    pub fn connected(mut self, yes: bool) -> Self {
        self.connected = yes;
        self
    }
}

/// Zero-padded ids `v1..vn`, sortable as strings.
pub fn vertex_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("v{i:0width$}")).collect()
}

fn admissible(adj: &[VertexSet], s: &VertexSet, x: usize) -> bool {
    if adj[x].intersects(s) {
        return false;
    }
    s.iter().all(|y| adj[x].is_subset(&adj[y]) || adj[y].is_subset(&adj[x]))
}

fn is_admissible_set(adj: &[VertexSet], s: &VertexSet) -> bool {
    let members = s.to_vec();
    members.iter().enumerate().all(|(k, &x)| {
        let earlier = VertexSet::from_indices(s.capacity(), members[..k].iter().copied());
        admissible(adj, &earlier, x)
    })
}

fn pick_neighbors(rng: &mut ChaCha8Rng, adj: &[VertexSet], i: usize, cfg: &GeneratorConfig) -> VertexSet {
    let n = cfg.n;
    let mut best: Option<VertexSet> = None;
    for _ in 0..cfg.retries {
        let s = VertexSet::from_indices(n, (0..i).filter(|_| rng.gen_bool(cfg.density)));
        if is_admissible_set(adj, &s) && !(cfg.connected && i > 0 && s.is_empty()) {
            best = Some(s);
            break;
        }
    }
    best.unwrap_or_else(|| {
        let target = ((cfg.density * i as f64).round() as usize).max(usize::from(cfg.connected && i > 0));
        let mut earlier: Vec<usize> = (0..i).collect();
        earlier.shuffle(rng);
        let mut s = VertexSet::new(n);
        for x in earlier {
            if s.len() >= target {
                break;
            }
            if admissible(adj, &s, x) {
                s.insert(x);
            }
        }
        s
    })
}

/// A chordal bipartite graph on `cfg.n` vertices, deterministic in the seed.
pub fn generate_chordal_bipartite(cfg: &GeneratorConfig) -> Result<Graph, GenerateError> {
    if cfg.n == 0 {
        return Err(GenerateError::Empty);
    }
    if !(0.0..=1.0).contains(&cfg.density) {
        return Err(GenerateError::BadDensity(cfg.density));
    }
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut adj = vec![VertexSet::new(n); n];
    let mut edges = Vec::new();
    for i in 0..n {
        let s = pick_neighbors(&mut rng, &adj, i, cfg);
        for x in &s {
            adj[x].insert(i);
            adj[i].insert(x);
            edges.push((x, i));
        }
    }
    let g = Graph::from_index_edges(vertex_names(n), &edges);
    if !is_chordal_bipartite(&g) {
        return Err(GenerateError::GenerationFailed);
    }
    Ok(g)
}

/// `K_{2,n}` with sides `a1, a2` and `b1..bn`.
pub fn complete_bipartite_2n(n: usize) -> Graph {
    let width = n.to_string().len();
    let edges: Vec<(String, String)> = (1..=2)
        .flat_map(|a| (1..=n).map(move |b| (format!("a{a}"), format!("b{b:0width$}"))))
        .collect();
    Graph::from_edges(edges).expect("well-formed")
}

/// The path `v1 - v2 - … - vn`.
pub fn path(n: usize) -> Graph {
    let names = vertex_names(n);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_index_edges(names, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::io::write_edge_list;

    #[test]
    fn generator_examples() {
        let k1 = generate_chordal_bipartite(&GeneratorConfig::new(1, 0.5, 7)).unwrap();
        assert_eq!(k1.len(), 1);
        assert_eq!(k1.edge_count(), 0);

        for seed in 0..20 {
            let g = generate_chordal_bipartite(&GeneratorConfig::new(4, 1.0, seed)).unwrap();
            assert!(is_chordal_bipartite(&g));
        }
        let cfg = GeneratorConfig::new(30, 0.3, 42).connected(true);
        let a = generate_chordal_bipartite(&cfg).unwrap();
        let b = generate_chordal_bipartite(&cfg).unwrap();
        assert_eq!(write_edge_list(&a), write_edge_list(&b));
        assert!(a.is_connected());
        assert!(is_chordal_bipartite(&a));
    }

    #[test]
    fn generator_rejects_bad_config() {
        assert_eq!(generate_chordal_bipartite(&GeneratorConfig::new(0, 0.5, 1)), Err(GenerateError::Empty));
        assert!(matches!(
            generate_chordal_bipartite(&GeneratorConfig::new(3, 1.5, 1)),
            Err(GenerateError::BadDensity(_))
        ));
    }

    #[test]
    fn families() {
        let k = complete_bipartite_2n(5);
        assert_eq!(k.len(), 7);
        assert_eq!(k.edge_count(), 10);
        assert!(is_chordal_bipartite(&k));
        let p = path(5);
        assert_eq!(p.names(), ["v1", "v2", "v3", "v4", "v5"]);
        assert_eq!(p.edge_count(), 4);
    }
}
