use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};
use crate::graph::{LayerGraph, PersonId};
use crate::paths;

/// Relative slack under which two edge scores count as tied.
const TIE_TOLERANCE: f64 = 1e-9;

fn edge_scores(g: &LayerGraph) -> HashMap<(usize, usize), f64> {
    let mut scores: HashMap<(usize, usize), f64> = g.edges().map(|e| (e, 0.0)).collect();
    for s in 0..g.node_count() {
        let sp = paths::single_source(g, s);
        paths::accumulate(&sp, |v, w, share| {
            *scores
                .get_mut(&(v.min(w), v.max(w)))
                .expect("DAG edges are graph edges") += share;
        });
    }
    // Each unordered pair is counted once from either endpoint.
    scores.values_mut().for_each(|v| *v /= 2.0);
    scores
}

/// Unnormalized edge betweenness: for every edge, the sum over unordered
/// node pairs of the fraction of their shortest paths using that edge.
pub fn edge_betweenness(g: &LayerGraph) -> BTreeMap<(PersonId, PersonId), f64> {
    let nodes = g.nodes();
    edge_scores(g)
        .into_iter()
        .map(|((i, j), v)| ((nodes[i].clone(), nodes[j].clone()), v))
        .collect()
}

/// One disconnecting removal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitEvent {
    pub removed_edge: (PersonId, PersonId),
    /// Edges removed so far, this one included.
    pub edges_removed: usize,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GnDendrogram {
    /// Components of the input graph before any removal.
    pub initial: Partition,
    pub splits: Vec<SplitEvent>,
    /// Every removed edge in removal order.
    pub removed: Vec<(PersonId, PersonId)>,
    pub edges_removed_total: usize,
}

impl GnDendrogram {
    pub fn first_cut(&self) -> Option<&SplitEvent> {
        self.splits.first()
    }

    pub fn last_partition(&self) -> &Partition {
        self.splits.last().map_or(&self.initial, |s| &s.partition)
    }
}

fn components_partition(g: &LayerGraph) -> Partition {
    Partition::from_blocks(g.connected_components()).expect("components are non-empty and disjoint")
}

/// Picks the highest-scoring edge; near-ties go to the lexicographically
/// smallest `(min id, max id)` pair. Node order is id order, so index order
/// matches id order.
fn select_edge(scores: &HashMap<(usize, usize), f64>) -> Option<(usize, usize)> {
    let max = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = TIE_TOLERANCE * max.abs().max(1.0);
    scores
        .iter()
        .filter(|(_, &v)| v >= max - slack)
        .map(|(&e, _)| e)
        .min()
}

/// Repeatedly removes the edge of highest betweenness, recording a split
/// event whenever the number of components grows, until `stop` events have
/// been recorded.
pub fn girvan_newman(g: &LayerGraph, stop: usize) -> Result<GnDendrogram> {
    if stop == 0 {
        return Err(Error::InvalidParameter(
            "cut count must be at least 1".into(),
        ));
    }
    let nodes = g.nodes();
    let mut work = g.clone();
    let mut components = work.component_count();
    let mut dendrogram = GnDendrogram {
        initial: components_partition(g),
        splits: Vec::new(),
        removed: Vec::new(),
        edges_removed_total: 0,
    };
    while dendrogram.splits.len() < stop {
        let scores = edge_scores(&work);
        let Some((i, j)) = select_edge(&scores) else {
            return Err(Error::ExhaustedEdges {
                requested: stop,
                performed: dendrogram.splits.len(),
            });
        };
        work.remove_edge_mut(i, j);
        let edge = (nodes[i].clone(), nodes[j].clone());
        dendrogram.removed.push(edge.clone());
        dendrogram.edges_removed_total += 1;
        let now = work.component_count();
        if now > components {
            components = now;
            dendrogram.splits.push(SplitEvent {
                removed_edge: edge,
                edges_removed: dendrogram.edges_removed_total,
                partition: components_partition(&work),
            });
        }
    }
    Ok(dendrogram)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> PersonId {
        PersonId::from(s)
    }

    fn barbell() -> LayerGraph {
        LayerGraph::from_pairs(
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "c"),
                ("c", "d"),
                ("d", "e"),
                ("d", "f"),
                ("e", "f"),
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn edge_betweenness_examples() {
        let single = LayerGraph::from_pairs(&[("a", "b")], &[]).unwrap();
        assert_eq!(edge_betweenness(&single)[&(id("a"), id("b"))], 1.0);

        let path = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &[]).unwrap();
        assert_eq!(edge_betweenness(&path)[&(id("a"), id("b"))], 2.0);

        let eb = edge_betweenness(&barbell());
        assert_eq!(eb[&(id("c"), id("d"))], 9.0);
        assert!(eb
            .iter()
            .filter(|(e, _)| **e != (id("c"), id("d")))
            .all(|(_, &v)| v < 9.0));
    }

    #[test]
    fn barbell_first_cut_is_the_bridge() {
        let d = girvan_newman(&barbell(), 1).unwrap();
        assert_eq!(d.removed[0], (id("c"), id("d")));
        let cut = d.first_cut().unwrap();
        assert_eq!(cut.removed_edge, (id("c"), id("d")));
        assert_eq!(cut.edges_removed, 1);
        assert_eq!(cut.partition.fractions, vec![0.5, 0.5]);
        assert_eq!(cut.partition.members(0), vec![id("a"), id("b"), id("c")]);
    }

    #[test]
    fn tie_break_is_lexicographic() {
        let path = LayerGraph::from_pairs(&[("b", "c"), ("a", "b")], &[]).unwrap();
        let d = girvan_newman(&path, 1).unwrap();
        assert_eq!(d.removed, vec![(id("a"), id("b"))]);
        assert_eq!(d.splits[0].partition.members(0), vec![id("b"), id("c")]);
    }

    #[test]
    fn tree_splits_n_minus_one_times() {
        let tree =
            LayerGraph::from_pairs(&[("a", "b"), ("b", "c"), ("b", "d"), ("d", "e")], &[]).unwrap();
        let d = girvan_newman(&tree, 4).unwrap();
        assert_eq!(d.splits.len(), 4);
        assert_eq!(d.edges_removed_total, 4);
        assert_eq!(d.last_partition().community_count(), 5);
        assert!(matches!(
            girvan_newman(&tree, 5),
            Err(Error::ExhaustedEdges {
                requested: 5,
                performed: 4
            })
        ));
    }

    #[test]
    fn cycle_needs_two_removals_for_first_cut() {
        let c4 =
            LayerGraph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")], &[]).unwrap();
        let d = girvan_newman(&c4, 1).unwrap();
        assert_eq!(d.first_cut().unwrap().edges_removed, 2);
        assert!(girvan_newman(&c4, 0).is_err());
    }

    #[test]
    fn disconnected_input_starts_from_components() {
        let g = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &["z"]).unwrap();
        let d = girvan_newman(&g, 1).unwrap();
        assert_eq!(d.initial.community_count(), 2);
        assert_eq!(d.splits[0].partition.community_count(), 3);
    }
}
