//! Maximal and maximum clique enumeration.
//!
//! Enumeration is exact (Bron–Kerbosch with Tomita pivoting). Runtime is
//! exponential in the worst case, which is fine for graphs of a few hundred
//! sparse nodes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{LayerGraph, PersonId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueSet {
    /// Sorted by size descending, then by node list.
    pub cliques: Vec<Vec<PersonId>>,
    pub size_of_maximum: usize,
    /// Number of maximum-size cliques containing each node.
    pub membership_counts: BTreeMap<PersonId, usize>,
}

impl CliqueSet {
    fn new(mut cliques: Vec<Vec<PersonId>>) -> Self {
        for c in &mut cliques {
            c.sort();
        }
        cliques.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let size_of_maximum = cliques.first().map_or(0, Vec::len);
        let mut membership_counts = BTreeMap::new();
        for c in cliques.iter().take_while(|c| c.len() == size_of_maximum) {
            for id in c {
                *membership_counts.entry(id.clone()).or_insert(0) += 1;
            }
        }
        CliqueSet {
            cliques,
            size_of_maximum,
            membership_counts,
        }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Keeps only cliques with at least `min_size` nodes. Maximum-clique
    /// membership counts are unaffected.
    pub fn with_min_size(mut self, min_size: usize) -> Self {
        self.cliques.retain(|c| c.len() >= min_size);
        self
    }

    /// Index (in largest-first component order) of the component holding
    /// each clique.
    pub fn component_labels(&self, g: &LayerGraph) -> Vec<usize> {
        let mut label = vec![0; g.node_count()];
        for (c, members) in g.component_indices().iter().enumerate() {
            for &i in members {
                label[i] = c;
            }
        }
        self.cliques
            .iter()
            .map(|c| {
                c.first()
                    .and_then(|id| g.index_of(id))
                    .map_or(0, |i| label[i])
            })
            .collect()
    }

    /// Pairwise intersection sizes.
    pub fn overlap_matrix(&self) -> Vec<Vec<usize>> {
        self.cliques
            .iter()
            .map(|a| {
                self.cliques
                    .iter()
                    .map(|b| clique_overlap(a, b).0)
                    .collect()
            })
            .collect()
    }

    /// Nodes shared by every listed clique.
    pub fn mutual_intersection(&self) -> Vec<PersonId> {
        let mut iter = self.cliques.iter();
        let Some(first) = iter.next() else {
            return Vec::new();
        };
        let mut common: BTreeSet<&PersonId> = first.iter().collect();
        for c in iter {
            let other: BTreeSet<&PersonId> = c.iter().collect();
            common.retain(|id| other.contains(id));
        }
        common.into_iter().cloned().collect()
    }
}

struct Enumerator<'a> {
    g: &'a LayerGraph,
    found: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn intersect(&self, set: &[usize], v: usize) -> Vec<usize> {
        let nbrs = self.g.neighbors(v);
        set.iter()
            .copied()
            .filter(|w| nbrs.binary_search(w).is_ok())
            .collect()
    }

    fn expand(&mut self, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() {
                self.found.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| (self.intersect(&p, u).len(), std::cmp::Reverse(u)))
            .expect("p is non-empty");
        let pivot_nbrs = self.g.neighbors(pivot);
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|v| pivot_nbrs.binary_search(v).is_err())
            .collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let next_p = self.intersect(&p, v);
            let next_x = self.intersect(&x, v);
            self.expand(r, next_p, next_x);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
            x.sort_unstable();
        }
    }
}

/// All maximal cliques, isolated nodes included as singletons.
pub fn maximal_cliques(g: &LayerGraph) -> CliqueSet {
    let mut e = Enumerator {
        g,
        found: Vec::new(),
    };
    e.expand(&mut Vec::new(), (0..g.node_count()).collect(), Vec::new());
    let nodes = g.nodes();
    CliqueSet::new(
        e.found
            .into_iter()
            .map(|c| c.into_iter().map(|i| nodes[i].clone()).collect())
            .collect(),
    )
}

/// The maximal cliques of largest size.
pub fn maximum_cliques(g: &LayerGraph) -> CliqueSet {
    let mut set = maximal_cliques(g);
    let size = set.size_of_maximum;
    set.cliques.retain(|c| c.len() == size);
    set
}

/// Intersection size and its share of the larger clique.
pub fn clique_overlap(a: &[PersonId], b: &[PersonId]) -> (usize, f64) {
    let a: BTreeSet<&PersonId> = a.iter().collect();
    let shared = b.iter().filter(|id| a.contains(id)).count();
    let size = a.len().max(b.len());
    let fraction = if size == 0 {
        0.0
    } else {
        shared as f64 / size as f64
    };
    (shared, fraction)
}
