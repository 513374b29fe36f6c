#![allow(dead_code)]

use domenum::generate::{generate_chordal_bipartite, vertex_names, GeneratorConfig};
use domenum::model::Hypergraph;
use domenum::recognition::is_chordal_bipartite;
use domenum::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn connected_bipartite(n: usize, adj: &[u8]) -> bool {
    let mut colour = [u8::MAX; 8];
    colour[0] = 0;
    let mut seen = 1u8;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let mut nb = adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colour[u] == u8::MAX {
                colour[u] = 1 - colour[v];
                seen |= 1 << u;
                stack.push(u);
            } else if colour[u] == colour[v] {
                return false;
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Every connected chordal bipartite graph on exactly `n` labelled vertices.
pub fn labelled_connected_chordal_bipartite(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut adj = vec![0u8; n];
    for mask in 0u64..1 << pairs.len() {
        adj.iter_mut().for_each(|a| *a = 0);
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if !connected_bipartite(n, &adj) {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::from_index_edges(vertex_names(n), &edges);
        if is_chordal_bipartite(&g) {
            out.push(g);
        }
    }
    out
}

/// The exhaustive corpus for sizes `1..=max_n`.
pub fn exhaustive_corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(labelled_connected_chordal_bipartite).collect()
}

/// `count` generated chordal bipartite graphs with `lo..=hi` vertices.
pub fn generated_corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(lo..=hi);
            let density = rng.gen_range(0.1..0.7);
            let cfg = GeneratorConfig::new(n, density, seed.wrapping_mul(1000).wrapping_add(k as u64)).connected(k % 4 != 3);
            generate_chordal_bipartite(&cfg).expect("generator")
        })
        .collect()
}

/// A random hypergraph with `1..=max_edges` edges over at most `max_v` vertices.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_v: usize, max_edges: usize) -> Hypergraph {
    let nv = rng.gen_range(1..=max_v);
    let m = rng.gen_range(1..=max_edges);
    let names: Vec<String> = (1..=nv).map(|i| format!("u{i}")).collect();
    let edges: Vec<VertexSet> = (0..m)
        .map(|_| {
            let p = rng.gen_range(0.2..0.8);
            VertexSet::from_indices(nv, (0..nv).filter(|_| rng.gen_bool(p)))
        })
        .collect();
    Hypergraph::new(names, edges)
}
