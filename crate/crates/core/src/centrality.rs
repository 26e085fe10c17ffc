//! Degree, betweenness, closeness and eigenvector centrality, and top-k
//! ranking tables.
//!
//! Conventions:
//! - degree: raw edge counts;
//! - betweenness: pair dependencies over unordered pairs, divided by
//!   `(n-1)(n-2)/2`;
//! - closeness: `(n-1) / sum of distances`, connected graphs only;
//! - eigenvector: principal eigenvector of `A`, non-negative, unit L2 norm.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LayerGraph, PersonId};
use crate::paths;

pub const DEFAULT_EC_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_EC_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Degree,
    Betweenness,
    Closeness,
    Eigenvector,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Degree,
        Metric::Betweenness,
        Metric::Closeness,
        Metric::Eigenvector,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Betweenness => "betweenness",
            Metric::Closeness => "closeness",
            Metric::Eigenvector => "eigenvector",
        }
    }

    /// Column heading used in rendered tables.
    pub fn title(self) -> &'static str {
        match self {
            Metric::Degree => "Degree",
            Metric::Betweenness => "Betweenness",
            Metric::Closeness => "Closeness",
            Metric::Eigenvector => "Eigencentrality",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric {s:?}")))
    }
}

/// Scores of one metric for every node of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityScores {
    pub metric: Metric,
    pub scores: BTreeMap<PersonId, f64>,
    pub normalization: String,
}

impl CentralityScores {
    fn from_vec(g: &LayerGraph, metric: Metric, values: Vec<f64>, normalization: &str) -> Self {
        CentralityScores {
            metric,
            scores: g.nodes().iter().cloned().zip(values).collect(),
            normalization: normalization.to_string(),
        }
    }

    pub fn get(&self, id: &PersonId) -> Option<f64> {
        self.scores.get(id).copied()
    }

    /// The `k` highest-scoring nodes, ties broken by id.
    pub fn top(&self, k: usize) -> Vec<(PersonId, f64)> {
        let mut rows: Vec<(PersonId, f64)> =
            self.scores.iter().map(|(id, &v)| (id.clone(), v)).collect();
        // Quantized keys keep the order total when iterative solvers leave
        // last-digit noise between tied nodes.
        rows.sort_by_key(|(id, v)| (std::cmp::Reverse((v * 1e9).round() as i64), id.clone()));
        rows.truncate(k);
        rows
    }
}

pub fn degree_centrality(g: &LayerGraph) -> CentralityScores {
    let values = (0..g.node_count()).map(|i| g.degree_of(i) as f64).collect();
    CentralityScores::from_vec(g, Metric::Degree, values, "raw edge count")
}

/// Exact betweenness by per-source dependency accumulation.
pub fn betweenness(g: &LayerGraph) -> CentralityScores {
    let n = g.node_count();
    let mut totals = vec![0.0; n];
    for s in 0..n {
        let sp = paths::single_source(g, s);
        let delta = paths::accumulate(&sp, |_, _, _| {});
        for (v, d) in delta.into_iter().enumerate() {
            if v != s {
                totals[v] += d;
            }
        }
    }
    // Every unordered pair is seen from both endpoints.
    let scale = if n > 2 {
        1.0 / ((n - 1) * (n - 2)) as f64
    } else {
        0.0
    };
    let values = totals.into_iter().map(|t| t * scale).collect();
    CentralityScores::from_vec(
        g,
        Metric::Betweenness,
        values,
        "(n-1)(n-2)/2 unordered pairs",
    )
}

pub fn closeness(g: &LayerGraph) -> Result<CentralityScores> {
    g.require_connected()?;
    let n = g.node_count();
    let values = (0..n)
        .map(|s| {
            let sp = paths::single_source(g, s);
            let total: usize = sp.dist.iter().map(|d| d.expect("connected")).sum();
            if total == 0 {
                0.0
            } else {
                (n - 1) as f64 / total as f64
            }
        })
        .collect();
    Ok(CentralityScores::from_vec(
        g,
        Metric::Closeness,
        values,
        "(n-1)/sum of distances",
    ))
}

/// Principal eigenpair of a symmetric non-negative matrix by power iteration
/// on `matrix + shift * I`.
///
/// Stops once `‖Mx − λx‖₂ ≤ tol` with `λ` the Rayleigh quotient of the
/// unshifted matrix. The returned vector is non-negative with unit norm.
pub fn principal_eigenvector(
    matrix: &DMatrix<f64>,
    shift: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, DVector<f64>)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = matrix.nrows();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut x = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    for _ in 0..=max_iter {
        let mx = matrix * &x;
        let lambda = x.dot(&mx);
        let residual = (&mx - lambda * &x).norm();
        if residual <= tol {
            x.iter_mut().for_each(|v| *v = v.max(0.0));
            let norm = x.norm();
            return Ok((lambda, x / norm));
        }
        let next = mx + shift * &x;
        let norm = next.norm();
        if norm == 0.0 {
            return Err(Error::NoConvergence(max_iter));
        }
        x = next / norm;
    }
    Err(Error::NoConvergence(max_iter))
}

pub fn eigencentrality(g: &LayerGraph, tol: f64, max_iter: usize) -> Result<CentralityScores> {
    g.require_connected()?;
    if g.node_count() == 1 {
        return Ok(CentralityScores::from_vec(
            g,
            Metric::Eigenvector,
            vec![1.0],
            "unit L2 norm",
        ));
    }
    let (_, x) = principal_eigenvector(&g.adjacency_matrix(), 1.0, tol, max_iter)?;
    Ok(CentralityScores::from_vec(
        g,
        Metric::Eigenvector,
        x.iter().copied().collect(),
        "unit L2 norm",
    ))
}

/// All four metrics on one connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralitySet {
    pub degree: CentralityScores,
    pub betweenness: CentralityScores,
    pub closeness: CentralityScores,
    pub eigenvector: CentralityScores,
}

impl CentralitySet {
    pub fn compute(g: &LayerGraph) -> Result<Self> {
        Ok(CentralitySet {
            closeness: closeness(g)?,
            eigenvector: eigencentrality(g, DEFAULT_EC_TOLERANCE, DEFAULT_EC_MAX_ITER)?,
            degree: degree_centrality(g),
            betweenness: betweenness(g),
        })
    }

    pub fn get(&self, metric: Metric) -> &CentralityScores {
        match metric {
            Metric::Degree => &self.degree,
            Metric::Betweenness => &self.betweenness,
            Metric::Closeness => &self.closeness,
            Metric::Eigenvector => &self.eigenvector,
        }
    }

    /// Per-node values in `Metric::ALL` order.
    pub fn row(&self, id: &PersonId) -> Option<[f64; 4]> {
        Some([
            self.degree.get(id)?,
            self.betweenness.get(id)?,
            self.closeness.get(id)?,
            self.eigenvector.get(id)?,
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedColumn {
    pub metric: Metric,
    pub rows: Vec<(PersonId, f64)>,
}

/// Top-k nodes under each metric, computed on a connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedTable {
    pub k: usize,
    pub node_count: usize,
    pub columns: Vec<RankedColumn>,
}

impl RankedTable {
    pub fn from_set(set: &CentralitySet, k: usize) -> Self {
        RankedTable {
            k,
            node_count: set.degree.scores.len(),
            columns: Metric::ALL
                .into_iter()
                .map(|metric| RankedColumn {
                    metric,
                    rows: set.get(metric).top(k),
                })
                .collect(),
        }
    }

    pub fn column(&self, metric: Metric) -> Option<&RankedColumn> {
        self.columns.iter().find(|c| c.metric == metric)
    }
}

pub fn ranked_table(g: &LayerGraph, k: usize) -> Result<RankedTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let set = CentralitySet::compute(g)?;
    Ok(RankedTable::from_set(&set, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PersonId;

    fn id(s: &str) -> PersonId {
        PersonId::from(s)
    }

    fn star() -> LayerGraph {
        LayerGraph::from_pairs(&[("c", "x"), ("c", "y"), ("c", "z")], &[]).unwrap()
    }

    fn path(names: &[&str]) -> LayerGraph {
        let pairs: Vec<_> = names.windows(2).map(|w| (w[0], w[1])).collect();
        LayerGraph::from_pairs(&pairs, &[]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn degree_examples() {
        let k3 = LayerGraph::from_pairs(&[("a", "b"), ("b", "c"), ("a", "c")], &[]).unwrap();
        let d = degree_centrality(&k3);
        assert!(d.scores.values().all(|&v| v == 2.0));
        let d = degree_centrality(&star());
        assert_eq!(d.get(&id("c")), Some(3.0));
        assert_eq!(d.get(&id("x")), Some(1.0));
    }

    #[test]
    fn betweenness_examples() {
        let b = betweenness(&path(&["a", "b", "c", "d"]));
        assert!(close(b.get(&id("b")).unwrap(), 2.0 / 3.0, 1e-12));
        assert!(close(b.get(&id("a")).unwrap(), 0.0, 1e-12));
        let b = betweenness(&star());
        assert!(close(b.get(&id("c")).unwrap(), 1.0, 1e-12));
        let b = betweenness(&LayerGraph::from_pairs(&[("a", "b")], &[]).unwrap());
        assert_eq!(b.get(&id("a")), Some(0.0));
    }

    #[test]
    fn betweenness_ignores_disconnected_pairs() {
        let g = LayerGraph::from_pairs(&[("a", "b"), ("b", "c")], &["d"]).unwrap();
        let b = betweenness(&g);
        // One of C(3,2) pairs routes through b; normalizer is C(3,2) for n=4.
        assert!(close(b.get(&id("b")).unwrap(), 1.0 / 3.0, 1e-12));
    }

    #[test]
    fn closeness_examples() {
        let c = closeness(&path(&["a", "b", "c"])).unwrap();
        assert!(close(c.get(&id("b")).unwrap(), 1.0, 1e-12));
        assert!(close(c.get(&id("a")).unwrap(), 2.0 / 3.0, 1e-12));
        let k4 = LayerGraph::from_pairs(
            &[
                ("a", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "d"),
            ],
            &[],
        )
        .unwrap();
        let c = closeness(&k4).unwrap();
        assert!(c.scores.values().all(|&v| close(v, 1.0, 1e-12)));
        let split = LayerGraph::from_pairs(&[("a", "b")], &["c"]).unwrap();
        assert!(matches!(
            closeness(&split),
            Err(Error::DisconnectedGraph { components: 2 })
        ));
    }

    #[test]
    fn eigencentrality_examples() {
        let c4 =
            LayerGraph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], &[]).unwrap();
        let e = eigencentrality(&c4, 1e-10, 10_000).unwrap();
        assert!(e.scores.values().all(|&v| close(v, 0.5, 1e-9)));

        let e = eigencentrality(&star(), 1e-10, 10_000).unwrap();
        assert!(close(e.get(&id("c")).unwrap(), 1.0 / 2f64.sqrt(), 1e-9));
        assert!(close(e.get(&id("x")).unwrap(), 1.0 / 6f64.sqrt(), 1e-9));

        let split = LayerGraph::from_pairs(&[("a", "b")], &["c"]).unwrap();
        assert!(matches!(
            eigencentrality(&split, 1e-10, 100),
            Err(Error::DisconnectedGraph { .. })
        ));
        assert!(eigencentrality(&star(), 0.0, 100).is_err());
    }

    #[test]
    fn eigencentrality_matches_dense_solver() {
        let g = LayerGraph::from_pairs(
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "a"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("f", "d"),
            ],
            &[],
        )
        .unwrap();
        let a = g.adjacency_matrix();
        let (lambda, x) = principal_eigenvector(&a, 1.0, 1e-10, 10_000).unwrap();
        assert!((&a * &x - lambda * &x).norm() <= 1e-9);

        let eig = a.clone().symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let mut dense = eig.eigenvectors.column(top).into_owned();
        if dense.sum() < 0.0 {
            dense = -dense;
        }
        assert!(close(lambda, eig.eigenvalues[top], 1e-9));
        assert!((dense - x).norm() < 1e-8);
    }

    #[test]
    fn ranking_tie_break() {
        let g = LayerGraph::from_pairs(&[("b", "a")], &[]).unwrap();
        let t = ranked_table(&g, 2).unwrap();
        for col in &t.columns {
            assert_eq!(col.rows[0].0, id("a"));
            assert_eq!(col.rows[1].0, id("b"));
            assert_eq!(col.rows[0].1, col.rows[1].1);
        }
        let t = ranked_table(&star(), 1).unwrap();
        assert!(t.columns.iter().all(|c| c.rows[0].0 == id("c")));
        assert!(ranked_table(&star(), 0).is_err());
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.as_str().parse::<Metric>().unwrap(), m);
        }
    }
}
