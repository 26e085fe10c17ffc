use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};
use crate::graph::{LayerGraph, PersonId};

pub const DEFAULT_SPECTRAL_TOLERANCE: f64 = 1e-8;

/// Entries this close to zero are treated as zero for the sign split.
const ZERO_ENTRY: f64 = 1e-10;
/// Relative gap under which two Laplacian eigenvalues are treated as equal.
const CLUSTER_GAP: f64 = 1e-9;

/// Diagonal degree matrix `D` in node order.
pub fn degree_matrix(g: &LayerGraph) -> DMatrix<f64> {
    let degrees: Vec<f64> = (0..g.node_count()).map(|i| g.degree_of(i) as f64).collect();
    DMatrix::from_diagonal(&DVector::from_vec(degrees))
}

/// Combinatorial Laplacian `L = D - A`.
pub fn laplacian(g: &LayerGraph) -> DMatrix<f64> {
    degree_matrix(g) - g.adjacency_matrix()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBisection {
    /// Algebraic connectivity (second smallest Laplacian eigenvalue).
    pub fiedler_value: f64,
    pub fiedler_vector: BTreeMap<PersonId, f64>,
    pub partition: Partition,
    /// Multiplicity of the Fiedler value; above 1 the vector is the
    /// canonical member of the eigenspace described on [`fiedler_bisection`].
    pub multiplicity: usize,
    /// `‖Lv − λ₂v‖₂` of the returned vector.
    pub residual: f64,
}

impl SpectralBisection {
    pub fn is_degenerate(&self) -> bool {
        self.multiplicity > 1
    }
}

/// Fixes the global sign so the first entry (in id order) that is not
/// numerically zero is positive.
fn fix_sign(v: &mut DVector<f64>) {
    if let Some(first) = v.iter().find(|x| x.abs() > ZERO_ENTRY) {
        if *first < 0.0 {
            v.neg_mut();
        }
    }
}

/// Sign bisection of a connected graph by its Fiedler vector.
///
/// The Laplacian is diagonalized densely. When the second eigenvalue is
/// repeated, the vector used is the normalized projection onto its
/// eigenspace of the first unit vector (in id order) with a non-zero
/// projection, which does not depend on the basis the solver returns.
/// Zero entries join the non-negative block; block 0 always holds the
/// smallest id.
pub fn fiedler_bisection(g: &LayerGraph, tol: f64) -> Result<SpectralBisection> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    g.require_connected()?;
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "bisection needs at least two nodes".into(),
        ));
    }
    let lap = laplacian(g);
    let eig = lap.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lambda = eig.eigenvalues[order[1]].max(0.0);
    let largest = eig.eigenvalues[order[n - 1]];
    let gap = CLUSTER_GAP * largest.abs().max(1.0);
    let cluster: Vec<usize> = order[1..]
        .iter()
        .copied()
        .take_while(|&k| (eig.eigenvalues[k] - lambda).abs() <= gap)
        .collect();

    let mut v = if cluster.len() == 1 {
        eig.eigenvectors.column(cluster[0]).into_owned()
    } else {
        let basis = DMatrix::from_columns(
            &cluster
                .iter()
                .map(|&k| eig.eigenvectors.column(k))
                .collect::<Vec<_>>(),
        );
        let projector = &basis * basis.transpose();
        (0..n)
            .map(|i| projector.column(i).into_owned())
            .find(|c| c.norm() > 1e-6)
            .expect("a non-trivial eigenspace projects some unit vector")
    };
    let mean = v.mean();
    v.add_scalar_mut(-mean);
    v /= v.norm();
    fix_sign(&mut v);

    let residual = (&lap * &v - lambda * &v).norm();
    if residual > tol {
        return Err(Error::NoConvergence(0));
    }

    let nodes = g.nodes();
    let (mut non_negative, mut negative) = (Vec::new(), Vec::new());
    for (i, &x) in v.iter().enumerate() {
        if x >= -ZERO_ENTRY {
            non_negative.push(nodes[i].clone());
        } else {
            negative.push(nodes[i].clone());
        }
    }
    let mut blocks = vec![non_negative, negative];
    blocks.retain(|b| !b.is_empty());
    Ok(SpectralBisection {
        fiedler_value: lambda,
        fiedler_vector: nodes.iter().cloned().zip(v.iter().copied()).collect(),
        partition: Partition::from_blocks(blocks)?,
        multiplicity: cluster.len(),
        residual,
    })
}
