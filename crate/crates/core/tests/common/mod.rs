#![allow(dead_code)]

use plexnet::{LayerGraph, PersonId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Zero-padded so id order equals index order.
pub fn id(i: usize) -> PersonId {
    PersonId::new(format!("n{i:02}")).unwrap()
}

pub fn layer(n: usize, edges: &[(usize, usize)]) -> LayerGraph {
    LayerGraph::from_edges((0..n).map(id), edges.iter().map(|&(u, v)| (id(u), id(v)))).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
