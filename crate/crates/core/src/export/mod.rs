//! Layout and serialization: GraphML, DOT, CSV tables and the text report.

pub mod dot;
pub mod graphml;
pub mod layout;
pub mod report;
pub mod tables;

use std::collections::BTreeMap;

use crate::centrality::CentralitySet;
use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::PersonId;

pub use dot::{read_dot, to_dot};
pub use graphml::{layer_to_graphml, network_to_graphml, read_graphml};
pub use layout::{force_layout, LayoutParams, LayoutResult};
pub use report::{
    render_clique_report, render_fiedler_bisection, render_fit_outcomes, render_girvan_newman,
    render_ranked_table, render_report, CliqueReport, FitOutcome, LayerReport, ReportBundle,
};

/// Per-node attributes attached to exported graphs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeAnnotations {
    pub community: BTreeMap<PersonId, usize>,
    /// `[degree, betweenness, closeness, eigenvector]`.
    pub scores: BTreeMap<PersonId, [f64; 4]>,
    pub positions: BTreeMap<PersonId, (f64, f64)>,
}

impl NodeAnnotations {
    pub fn with_partition(mut self, p: &Partition) -> Self {
        self.community = p.assignment.clone();
        self
    }

    pub fn with_centrality(mut self, set: &CentralitySet) -> Self {
        self.scores = set
            .degree
            .scores
            .keys()
            .filter_map(|id| Some((id.clone(), set.row(id)?)))
            .collect();
        self
    }

    pub fn with_layout(mut self, layout: &LayoutResult) -> Self {
        self.positions = layout.positions.clone();
        self
    }

    /// Fails on the first annotated node that is not in `nodes`.
    pub(crate) fn check<'a>(&self, nodes: impl Iterator<Item = &'a PersonId>) -> Result<()> {
        let known: std::collections::BTreeSet<&PersonId> = nodes.collect();
        self.community
            .keys()
            .chain(self.scores.keys())
            .chain(self.positions.keys())
            .find(|id| !known.contains(id))
            .map_or(Ok(()), |id| Err(Error::AnnotationMismatch(id.clone())))
    }
}
