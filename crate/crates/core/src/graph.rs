//! Multiplex network substrate.
//!
//! A [`MultiplexNetwork`] is a node registry plus one simple undirected edge
//! set per [`EdgeKind`]. Every analysis consumes a single [`LayerGraph`]
//! extracted from it. Node lists are kept sorted by [`PersonId`] so that every
//! derived output has a deterministic order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque identifier of a person (a node).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PersonId(String);

impl PersonId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyId);
        }
        Ok(PersonId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PersonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for PersonId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PersonId::new(s)
    }
}

impl From<&str> for PersonId {
    /// Panics on the empty string; intended for literals.
    fn from(s: &str) -> Self {
        PersonId::new(s).expect("person id literal must be non-empty")
    }
}

/// The five relationship types of the source data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Work,
    Alliance,
    Friendship,
    Family,
    Rivalry,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 5] = [
        EdgeKind::Work,
        EdgeKind::Alliance,
        EdgeKind::Friendship,
        EdgeKind::Family,
        EdgeKind::Rivalry,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Work => "work",
            EdgeKind::Alliance => "alliance",
            EdgeKind::Friendship => "friendship",
            EdgeKind::Family => "family",
            EdgeKind::Rivalry => "rivalry",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EdgeKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownRelationKind(s.to_string()))
    }
}

fn ordered_pair(a: PersonId, b: PersonId) -> (PersonId, PersonId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Node registry plus five typed, undirected, simple edge layers.
///
/// The same pair may be linked in several layers; within one layer it
/// appears at most once.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiplexNetwork {
    nodes: BTreeMap<PersonId, String>,
    layers: BTreeMap<EdgeKind, BTreeSet<(PersonId, PersonId)>>,
}

impl MultiplexNetwork {
    /// Builds a network, collapsing duplicate and reversed edges within a layer.
    pub fn build<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (PersonId, String)>,
        E: IntoIterator<Item = (PersonId, PersonId, EdgeKind)>,
    {
        let mut registry = BTreeMap::new();
        for (id, name) in nodes {
            if registry.contains_key(&id) {
                return Err(Error::DuplicateNode(id));
            }
            registry.insert(id, name);
        }
        let mut layers: BTreeMap<EdgeKind, BTreeSet<(PersonId, PersonId)>> = EdgeKind::ALL
            .iter()
            .map(|&k| (k, BTreeSet::new()))
            .collect();
        for (u, v, kind) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for endpoint in [&u, &v] {
                if !registry.contains_key(endpoint) {
                    return Err(Error::UnknownEndpoint {
                        source_id: u.clone(),
                        target: v.clone(),
                        kind,
                        missing: endpoint.clone(),
                    });
                }
            }
            layers
                .get_mut(&kind)
                .expect("all kinds present")
                .insert(ordered_pair(u, v));
        }
        Ok(MultiplexNetwork {
            nodes: registry,
            layers,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Node ids with display names, in id order.
    pub fn nodes(&self) -> impl Iterator<Item = (&PersonId, &str)> {
        self.nodes.iter().map(|(id, name)| (id, name.as_str()))
    }

    pub fn name(&self, id: &PersonId) -> Option<&str> {
        self.nodes.get(id).map(String::as_str)
    }

    pub fn contains(&self, id: &PersonId) -> bool {
        self.nodes.contains_key(id)
    }

    /// Edges of one layer as `(smaller id, larger id)` pairs, sorted.
    pub fn edges(&self, kind: EdgeKind) -> impl Iterator<Item = &(PersonId, PersonId)> {
        self.layers.get(&kind).into_iter().flatten()
    }

    pub fn edge_count(&self, kind: EdgeKind) -> usize {
        self.layers.get(&kind).map_or(0, BTreeSet::len)
    }

    pub fn total_edge_count(&self) -> usize {
        self.layers.values().map(BTreeSet::len).sum()
    }

    /// All typed edges, ordered by kind then pair.
    pub fn typed_edges(&self) -> impl Iterator<Item = (&PersonId, &PersonId, EdgeKind)> {
        self.layers
            .iter()
            .flat_map(|(&kind, set)| set.iter().map(move |(u, v)| (u, v, kind)))
    }

    /// Extracts one layer; every network node is kept, isolates included.
    pub fn layer(&self, kind: EdgeKind) -> LayerGraph {
        let nodes: Vec<PersonId> = self.nodes.keys().cloned().collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        let index = |id: &PersonId| nodes.binary_search(id).expect("endpoint registered");
        for (u, v) in self.edges(kind) {
            let (i, j) = (index(u), index(v));
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        LayerGraph {
            nodes,
            adjacency,
            kind: Some(kind),
        }
    }
}

/// One simple undirected graph with nodes sorted by id.
///
/// Adjacency is stored as sorted neighbor index lists; the dense matrix `A`
/// is available through [`LayerGraph::adjacency_matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerGraph {
    nodes: Vec<PersonId>,
    adjacency: Vec<Vec<usize>>,
    kind: Option<EdgeKind>,
}

impl LayerGraph {
    /// Builds an ad hoc graph (no layer provenance). Edge endpoints must be
    /// listed in `nodes`; duplicates collapse, self-loops are rejected.
    pub fn from_edges<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = PersonId>,
        E: IntoIterator<Item = (PersonId, PersonId)>,
    {
        let mut nodes: Vec<PersonId> = nodes.into_iter().collect();
        nodes.sort();
        nodes.dedup();
        let mut sets = vec![BTreeSet::new(); nodes.len()];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let i = nodes
                .binary_search(&u)
                .map_err(|_| Error::UnknownNode(u.clone()))?;
            let j = nodes
                .binary_search(&v)
                .map_err(|_| Error::UnknownNode(v.clone()))?;
            sets[i].insert(j);
            sets[j].insert(i);
        }
        Ok(LayerGraph {
            nodes,
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            kind: None,
        })
    }

    /// Convenience for tests and examples: nodes are inferred from the edges
    /// plus any extra isolates.
    pub fn from_pairs(pairs: &[(&str, &str)], isolates: &[&str]) -> Result<Self> {
        let nodes = pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(isolates.iter().copied())
            .map(PersonId::new)
            .collect::<Result<Vec<_>>>()?;
        let edges = pairs
            .iter()
            .map(|&(a, b)| Ok((PersonId::new(a)?, PersonId::new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(nodes, edges)
    }

    pub fn with_kind(mut self, kind: Option<EdgeKind>) -> Self {
        self.kind = kind;
        self
    }

    pub fn kind(&self) -> Option<EdgeKind> {
        self.kind
    }

    pub fn nodes(&self) -> &[PersonId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, id: &PersonId) -> Option<usize> {
        self.nodes.binary_search(id).ok()
    }

    fn require(&self, id: &PersonId) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.clone()))
    }

    /// Sorted neighbor indices of node `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Edges as id pairs, smaller id first.
    pub fn edge_ids(&self) -> impl Iterator<Item = (&PersonId, &PersonId)> + '_ {
        self.edges().map(|(i, j)| (&self.nodes[i], &self.nodes[j]))
    }

    /// Dense symmetric 0/1 adjacency matrix in node order.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.node_count();
        let mut a = DMatrix::zeros(n, n);
        for (i, j) in self.edges() {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn degree(&self, id: &PersonId) -> Result<usize> {
        Ok(self.degree_of(self.require(id)?))
    }

    pub fn degree_sequence(&self) -> BTreeMap<PersonId, usize> {
        self.nodes
            .iter()
            .zip(&self.adjacency)
            .map(|(id, list)| (id.clone(), list.len()))
            .collect()
    }

    /// Histogram `degree -> count` over the neighbors of `id`.
    pub fn neighbor_degree_histogram(&self, id: &PersonId) -> Result<BTreeMap<usize, usize>> {
        let i = self.require(id)?;
        let mut histogram = BTreeMap::new();
        for &j in &self.adjacency[i] {
            *histogram.entry(self.degree_of(j)).or_insert(0) += 1;
        }
        Ok(histogram)
    }

    /// Connected components as sorted index lists, largest first; ties go to
    /// the component holding the smallest id.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        // Discovery order already ascends by smallest member, so a stable
        // sort on size keeps the id tie-break.
        components.sort_by_key(|c| std::cmp::Reverse(c.len()));
        components
    }

    pub fn connected_components(&self) -> Vec<Vec<PersonId>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.nodes[i].clone()).collect())
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_indices().len()
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.component_count() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let components = self.component_count();
        if components > 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(())
    }

    /// Subgraph induced on the given node indices.
    pub fn induced(&self, members: &[usize]) -> LayerGraph {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut remap = vec![usize::MAX; self.node_count()];
        for (new, &old) in members.iter().enumerate() {
            remap[old] = new;
        }
        let adjacency = members
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .iter()
                    .filter_map(|&w| (remap[w] != usize::MAX).then_some(remap[w]))
                    .collect()
            })
            .collect();
        LayerGraph {
            nodes: members.iter().map(|&i| self.nodes[i].clone()).collect(),
            adjacency,
            kind: self.kind,
        }
    }

    /// Induced subgraph on the largest connected component.
    pub fn giant_component(&self) -> Result<LayerGraph> {
        let components = self.component_indices();
        let largest = components.first().ok_or(Error::EmptyGraph)?;
        Ok(self.induced(largest))
    }

    /// Removes the edge `(i, j)` in place.
    pub(crate) fn remove_edge_mut(&mut self, i: usize, j: usize) {
        self.adjacency[i].retain(|&w| w != j);
        self.adjacency[j].retain(|&w| w != i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> PersonId {
        PersonId::from(s)
    }

    fn node(s: &str) -> (PersonId, String) {
        (id(s), s.to_uppercase())
    }

    #[test]
    fn symmetric_duplicates_collapse() {
        let net = MultiplexNetwork::build(
            [node("a"), node("b")],
            [
                (id("a"), id("b"), EdgeKind::Work),
                (id("b"), id("a"), EdgeKind::Work),
            ],
        )
        .unwrap();
        assert_eq!(net.edge_count(EdgeKind::Work), 1);
        assert_eq!(net.total_edge_count(), 1);
    }

    #[test]
    fn cross_layer_duplicates_kept() {
        let net = MultiplexNetwork::build(
            [node("a"), node("b"), node("c")],
            [
                (id("a"), id("b"), EdgeKind::Work),
                (id("a"), id("b"), EdgeKind::Alliance),
            ],
        )
        .unwrap();
        assert_eq!(net.edge_count(EdgeKind::Work), 1);
        assert_eq!(net.edge_count(EdgeKind::Alliance), 1);

        let work = net.layer(EdgeKind::Work);
        assert_eq!((work.node_count(), work.edge_count()), (3, 1));
        let rivalry = net.layer(EdgeKind::Rivalry);
        assert_eq!((rivalry.node_count(), rivalry.edge_count()), (3, 0));
        assert_eq!(rivalry.kind(), Some(EdgeKind::Rivalry));
    }

    #[test]
    fn build_errors() {
        let err = MultiplexNetwork::build([node("a")], [(id("a"), id("a"), EdgeKind::Work)]);
        assert!(matches!(err, Err(Error::SelfLoop(_))));
        let err = MultiplexNetwork::build([node("a")], [(id("a"), id("x"), EdgeKind::Work)]);
        assert!(matches!(err, Err(Error::UnknownEndpoint { missing, .. }) if missing == id("x")));
        let err = MultiplexNetwork::build([node("a"), node("a")], []);
        assert!(matches!(err, Err(Error::DuplicateNode(_))));
        assert!(PersonId::new("").is_err());
    }

    #[test]
    fn edge_kind_parse() {
        assert_eq!("family".parse::<EdgeKind>().unwrap(), EdgeKind::Family);
        assert!(matches!(
            "mentor".parse::<EdgeKind>(),
            Err(Error::UnknownRelationKind(t)) if t == "mentor"
        ));
    }

    #[test]
    fn components_path_plus_isolate() {
        let g = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &["d"]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![id("a"), id("b"), id("c")], vec![id("d")]]);
        let giant = g.giant_component().unwrap();
        assert_eq!(giant.nodes(), &[id("a"), id("b"), id("c")]);
        assert_eq!(giant.edge_count(), 2);
    }

    #[test]
    fn components_edgeless() {
        let g = LayerGraph::from_pairs(&[], &["d", "c", "b", "a"]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 4);
        assert_eq!(comps[0], vec![id("a")]);
        assert_eq!(comps[3], vec![id("d")]);
    }

    #[test]
    fn barbell_is_one_component() {
        let g = LayerGraph::from_pairs(
            &[
                ("a", "b"),
                ("b", "c"),
                ("a", "c"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("d", "f"),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(g.connected_components().len(), 1);
        assert_eq!(g.giant_component().unwrap(), g);
    }

    #[test]
    fn component_tie_breaks_on_smallest_id() {
        let g = LayerGraph::from_pairs(&[("x", "y"), ("b", "c")], &[]).unwrap();
        assert_eq!(g.connected_components()[0], vec![id("b"), id("c")]);
    }

    #[test]
    fn giant_component_of_empty_graph() {
        let g = LayerGraph::from_pairs(&[], &[]).unwrap();
        assert!(matches!(g.giant_component(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn degrees_and_histograms() {
        let k3 = LayerGraph::from_pairs(&[("a", "b"), ("b", "c"), ("a", "c")], &[]).unwrap();
        assert_eq!(k3.degree(&id("a")).unwrap(), 2);
        assert_eq!(
            k3.neighbor_degree_histogram(&id("a")).unwrap(),
            BTreeMap::from([(2, 2)])
        );

        let star = LayerGraph::from_pairs(&[("c", "x"), ("c", "y"), ("c", "z")], &[]).unwrap();
        assert_eq!(star.degree(&id("c")).unwrap(), 3);
        assert_eq!(star.degree(&id("x")).unwrap(), 1);
        assert_eq!(
            star.neighbor_degree_histogram(&id("c")).unwrap(),
            BTreeMap::from([(1, 3)])
        );
        assert!(matches!(star.degree(&id("q")), Err(Error::UnknownNode(_))));
        assert!(matches!(
            star.neighbor_degree_histogram(&id("q")),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn adjacency_matrix_is_symmetric() {
        let g = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &[]).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a, a.transpose());
        assert_eq!(a.row(1).sum(), 2.0);
        assert_eq!(a[(0, 0)], 0.0);
    }
}
