//! Community partitions: Girvan–Newman edge removal, Fiedler-vector
//! bisection, and block matching between two partitions.

mod compare;
mod girvan_newman;
mod spectral;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PersonId;

pub use compare::{compare_partitions, PartitionComparison};
pub use girvan_newman::{edge_betweenness, girvan_newman, GnDendrogram, SplitEvent};
pub use spectral::{
    degree_matrix, fiedler_bisection, laplacian, SpectralBisection, DEFAULT_SPECTRAL_TOLERANCE,
};

/// Assignment of every node to exactly one community. Community indices are
/// dense from zero and no community is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub assignment: BTreeMap<PersonId, usize>,
    pub community_sizes: Vec<usize>,
    pub fractions: Vec<f64>,
}

impl Partition {
    /// Builds a partition whose community `i` is `blocks[i]`.
    pub fn from_blocks(blocks: Vec<Vec<PersonId>>) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        let mut community_sizes = Vec::with_capacity(blocks.len());
        for (index, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "community {index} is empty"
                )));
            }
            community_sizes.push(block.len());
            for id in block {
                if assignment.insert(id.clone(), index).is_some() {
                    return Err(Error::DuplicateNode(id));
                }
            }
        }
        let n = assignment.len() as f64;
        let fractions = community_sizes.iter().map(|&s| s as f64 / n).collect();
        Ok(Partition {
            assignment,
            community_sizes,
            fractions,
        })
    }

    /// Builds a partition from a `node -> community` map; labels are
    /// renumbered densely in ascending order of the original labels.
    pub fn from_assignment(assignment: BTreeMap<PersonId, usize>) -> Result<Self> {
        let mut blocks: BTreeMap<usize, Vec<PersonId>> = BTreeMap::new();
        for (id, label) in assignment {
            blocks.entry(label).or_default().push(id);
        }
        Self::from_blocks(blocks.into_values().collect())
    }

    pub fn community_count(&self) -> usize {
        self.community_sizes.len()
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_of(&self, id: &PersonId) -> Option<usize> {
        self.assignment.get(id).copied()
    }

    /// Members of community `index`, sorted.
    pub fn members(&self, index: usize) -> Vec<PersonId> {
        self.assignment
            .iter()
            .filter(|&(_, &c)| c == index)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn blocks(&self) -> Vec<Vec<PersonId>> {
        let mut blocks = vec![Vec::new(); self.community_count()];
        for (id, &c) in &self.assignment {
            blocks[c].push(id.clone());
        }
        blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<PersonId> {
        v.iter().map(|&s| PersonId::from(s)).collect()
    }

    #[test]
    fn partition_invariants() {
        let p = Partition::from_blocks(vec![ids(&["a", "b", "c"]), ids(&["d"])]).unwrap();
        assert_eq!(p.community_sizes, vec![3, 1]);
        assert_eq!(p.fractions, vec![0.75, 0.25]);
        assert!((p.fractions.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(p.members(1), ids(&["d"]));
        assert!(Partition::from_blocks(vec![ids(&["a"]), vec![]]).is_err());
        assert!(Partition::from_blocks(vec![ids(&["a"]), ids(&["a"])]).is_err());

        let q = Partition::from_assignment(p.assignment.clone()).unwrap();
        assert_eq!(p, q);
        let sparse = Partition::from_assignment(
            [("a", 4), ("b", 9)]
                .map(|(s, c)| (PersonId::from(s), c))
                .into(),
        )
        .unwrap();
        assert_eq!(sparse.community_of(&"b".into()), Some(1));
    }
}
