//! Single-source shortest-path counting shared by node and edge betweenness.

use std::collections::VecDeque;

use crate::graph::LayerGraph;

/// BFS tree data from one source: visit order, shortest-path counts and
/// predecessor lists on shortest paths.
pub(crate) struct ShortestPaths {
    pub order: Vec<usize>,
    pub sigma: Vec<f64>,
    pub preds: Vec<Vec<usize>>,
    pub dist: Vec<Option<usize>>,
}

pub(crate) fn single_source(g: &LayerGraph, source: usize) -> ShortestPaths {
    let n = g.node_count();
    let mut sp = ShortestPaths {
        order: Vec::with_capacity(n),
        sigma: vec![0.0; n],
        preds: vec![Vec::new(); n],
        dist: vec![None; n],
    };
    sp.sigma[source] = 1.0;
    sp.dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        sp.order.push(v);
        let dv = sp.dist[v].expect("queued nodes have a distance");
        for &w in g.neighbors(v) {
            if sp.dist[w].is_none() {
                sp.dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
            if sp.dist[w] == Some(dv + 1) {
                sp.sigma[w] += sp.sigma[v];
                sp.preds[w].push(v);
            }
        }
    }
    sp
}

/// Dependency accumulation over one source. Calls `on_edge(v, w, c)` for each
/// shortest-path DAG edge with its pair-dependency share and returns the
/// per-node dependency `delta`.
pub(crate) fn accumulate(
    sp: &ShortestPaths,
    mut on_edge: impl FnMut(usize, usize, f64),
) -> Vec<f64> {
    let mut delta = vec![0.0; sp.sigma.len()];
    for &w in sp.order.iter().rev() {
        for &v in &sp.preds[w] {
            let share = sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
            on_edge(v, w, share);
            delta[v] += share;
        }
    }
    delta
}
