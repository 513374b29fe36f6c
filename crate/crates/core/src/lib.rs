//! Enumeration of minimal dominating, total dominating and connected
//! dominating sets in chordal bipartite graphs.

pub mod bench;
pub mod cdom;
pub mod engine;
pub mod extensions;
pub mod generate;
pub mod model;
pub mod oracles;
pub mod recognition;
pub mod reductions;
pub mod separators;
pub mod set;

pub use model::{Graph, Hypergraph};
pub use set::VertexSet;
