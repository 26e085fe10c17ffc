//! Plain-text analysis report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::centrality::RankedTable;
use crate::clique::CliqueSet;
use crate::community::{GnDendrogram, Partition, PartitionComparison, SpectralBisection};
use crate::degree_stats::{FitMethod, PowerLawFit};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, PersonId};
use crate::ingest::IngestSummary;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitOutcome {
    pub method: FitMethod,
    pub k_min: usize,
    /// The fit, or the reason it could not be computed.
    pub result: std::result::Result<PowerLawFit, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueReport {
    pub set: CliqueSet,
    /// Component index of each clique in the full layer.
    pub components: Vec<usize>,
}

/// Everything computed for one layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerReport {
    pub kind: EdgeKind,
    /// Nodes with at least one edge in the layer.
    pub layer_nodes: usize,
    pub layer_edges: usize,
    /// Nodes of the graph the centrality and community analyses ran on.
    pub analyzed_nodes: usize,
    pub giant_component: bool,
    pub centrality: Option<RankedTable>,
    pub girvan_newman: Option<GnDendrogram>,
    pub fiedler: Option<SpectralBisection>,
    pub comparison: Option<PartitionComparison>,
    pub cliques: Option<CliqueReport>,
    pub fits: Vec<FitOutcome>,
}

impl LayerReport {
    pub fn new(kind: EdgeKind, layer_nodes: usize, layer_edges: usize) -> Self {
        LayerReport {
            kind,
            layer_nodes,
            layer_edges,
            analyzed_nodes: layer_nodes,
            giant_component: false,
            centrality: None,
            girvan_newman: None,
            fiedler: None,
            comparison: None,
            cliques: None,
            fits: Vec::new(),
        }
    }

    fn is_empty(&self) -> bool {
        self.centrality.is_none()
            && self.girvan_newman.is_none()
            && self.fiedler.is_none()
            && self.cliques.is_none()
            && self.fits.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportBundle {
    pub summary: Option<IngestSummary>,
    pub layers: Vec<LayerReport>,
}

fn pct(part: usize, whole: usize) -> String {
    if whole == 0 {
        "-".into()
    } else {
        format!("{:.2}", 100.0 * part as f64 / whole as f64)
    }
}

fn render_centrality(out: &mut String, table: &RankedTable) {
    let _ = writeln!(
        out,
        "Top centrality (k={}, {} nodes)",
        table.k, table.node_count
    );
    let width = table
        .columns
        .iter()
        .flat_map(|c| c.rows.iter().map(|(id, _)| id.as_str().len()))
        .max()
        .unwrap_or(0)
        .max(6);
    let cell = width + 8;
    let mut header = String::new();
    for col in &table.columns {
        let _ = write!(header, "{:<cell$}  ", col.metric.title());
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for r in 0..table.k {
        let mut line = String::new();
        for col in &table.columns {
            match col.rows.get(r) {
                Some((id, value)) => {
                    let shown = if col.metric == crate::centrality::Metric::Degree {
                        format!("{value:.0}")
                    } else {
                        format!("{value:.3}")
                    };
                    let _ = write!(line, "{:<width$} {:>7}  ", id.as_str(), shown);
                }
                None => {
                    let _ = write!(line, "{:<cell$}  ", "");
                }
            }
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

/// The ranked centrality table as printed in the report.
pub fn render_ranked_table(table: &RankedTable) -> String {
    let mut out = String::new();
    render_centrality(&mut out, table);
    out
}

fn render_partition(out: &mut String, p: &Partition, layer_nodes: usize) {
    let _ = writeln!(out, "  community      size  %analyzed    %layer");
    for (c, &size) in p.community_sizes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:<9} {:>9}  {:>9}  {:>8}",
            c,
            size,
            pct(size, p.node_count()),
            pct(size, layer_nodes)
        );
    }
}

/// Girvan-Newman section: every recorded split with both denominators.
pub fn render_girvan_newman(d: &GnDendrogram, layer_nodes: usize) -> String {
    let mut out = String::new();
    render_gn(&mut out, d, layer_nodes);
    out
}

/// Fiedler section: algebraic connectivity and the two blocks.
pub fn render_fiedler_bisection(s: &SpectralBisection, layer_nodes: usize) -> String {
    let mut out = String::new();
    render_fiedler(&mut out, s, layer_nodes);
    out
}

/// Clique inventory: one clique per line, then the maximum-clique overlaps.
pub fn render_clique_report(report: &CliqueReport) -> String {
    let mut out = String::new();
    render_cliques(&mut out, report);
    out
}

pub fn render_fit_outcomes(fits: &[FitOutcome]) -> String {
    let mut out = String::new();
    render_fits(&mut out, fits);
    out
}

fn render_gn(out: &mut String, d: &GnDendrogram, layer_nodes: usize) {
    let _ = writeln!(
        out,
        "Girvan-Newman (removed edges: {})",
        d.edges_removed_total
    );
    for (i, split) in d.splits.iter().enumerate() {
        let (u, v) = &split.removed_edge;
        let _ = writeln!(
            out,
            "split {}: removed {u} -- {v} (removal {})",
            i + 1,
            split.edges_removed
        );
        render_partition(out, &split.partition, layer_nodes);
    }
}

fn render_fiedler(out: &mut String, s: &SpectralBisection, layer_nodes: usize) {
    let _ = writeln!(
        out,
        "Fiedler bisection: algebraic connectivity {:.3}, multiplicity {}",
        s.fiedler_value, s.multiplicity
    );
    render_partition(out, &s.partition, layer_nodes);
}

const MAX_OVERLAP_MATRIX: usize = 12;

fn join(ids: &[PersonId]) -> String {
    ids.iter()
        .map(PersonId::as_str)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_cliques(out: &mut String, report: &CliqueReport) {
    let set = &report.set;
    let maximum: Vec<&Vec<PersonId>> = set
        .cliques
        .iter()
        .filter(|c| c.len() == set.size_of_maximum)
        .collect();
    let _ = writeln!(
        out,
        "Cliques: {} listed, {} maximum of size {}",
        set.len(),
        maximum.len(),
        set.size_of_maximum
    );
    for (i, clique) in set.cliques.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{i}] size {} component {}: {}",
            clique.len(),
            report.components.get(i).copied().unwrap_or(0),
            join(clique)
        );
    }
    if maximum.len() > MAX_OVERLAP_MATRIX {
        let _ = writeln!(
            out,
            "  overlap matrix omitted for {} maximum cliques",
            maximum.len()
        );
    } else if maximum.len() > 1 {
        let _ = writeln!(out, "  maximum-clique overlap (shared nodes / fraction)");
        for a in &maximum {
            let row: Vec<String> = maximum
                .iter()
                .map(|b| {
                    let (shared, frac) = crate::clique::clique_overlap(a, b);
                    format!("{shared}/{frac:.3}")
                })
                .collect();
            let _ = writeln!(out, "    {}", row.join("  "));
        }
        let common = CliqueSet {
            cliques: maximum.iter().map(|c| (*c).clone()).collect(),
            size_of_maximum: set.size_of_maximum,
            membership_counts: Default::default(),
        }
        .mutual_intersection();
        let common = if common.is_empty() {
            "none".to_string()
        } else {
            join(&common)
        };
        let _ = writeln!(out, "  shared by all maximum cliques: {common}");
    }
    let multi: Vec<String> = set
        .membership_counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(id, c)| format!("{id}:{c}"))
        .collect();
    if !multi.is_empty() {
        let _ = writeln!(out, "  in several maximum cliques: {}", multi.join(" "));
    }
}

fn render_fits(out: &mut String, fits: &[FitOutcome]) {
    let _ = writeln!(out, "Power-law fits");
    for f in fits {
        match &f.result {
            Ok(fit) => {
                let label = match fit.method {
                    FitMethod::LogLogLeastSquares => "R^2",
                    FitMethod::MaximumLikelihood => "KS",
                };
                let _ = writeln!(
                    out,
                    "  {:<4} gamma {:.3}  k_min {}  {label} {:.3}  support {}",
                    f.method.as_str(),
                    fit.gamma,
                    fit.k_min,
                    fit.goodness,
                    fit.support
                );
            }
            Err(reason) => {
                let _ = writeln!(
                    out,
                    "  {:<4} k_min {}  not fitted: {reason}",
                    f.method.as_str(),
                    f.k_min
                );
            }
        }
    }
}

pub fn render_report(bundle: &ReportBundle) -> Result<String> {
    if bundle.summary.is_none() && bundle.layers.iter().all(LayerReport::is_empty) {
        return Err(Error::EmptyBundle);
    }
    let mut out = String::new();
    if let Some(summary) = &bundle.summary {
        out.push_str("== network ==\n");
        out.push_str(&summary.to_string());
    }
    for layer in &bundle.layers {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "== {} layer ==", layer.kind);
        let _ = writeln!(
            out,
            "layer: {} connected nodes, {} edges; analyzed: {} nodes ({})",
            layer.layer_nodes,
            layer.layer_edges,
            layer.analyzed_nodes,
            if layer.giant_component {
                "giant component"
            } else {
                "full layer"
            }
        );
        if let Some(table) = &layer.centrality {
            out.push('\n');
            out.push_str(&render_ranked_table(table));
        }
        if let Some(gn) = &layer.girvan_newman {
            out.push('\n');
            out.push_str(&render_girvan_newman(gn, layer.layer_nodes));
        }
        if let Some(f) = &layer.fiedler {
            out.push('\n');
            out.push_str(&render_fiedler_bisection(f, layer.layer_nodes));
        }
        if let Some(cmp) = &layer.comparison {
            let _ = writeln!(
                out,
                "\nGirvan-Newman vs Fiedler: {} migrations",
                cmp.migrations
            );
        }
        if let Some(cliques) = &layer.cliques {
            out.push('\n');
            out.push_str(&render_clique_report(cliques));
        }
        if !layer.fits.is_empty() {
            out.push('\n');
            out.push_str(&render_fit_outcomes(&layer.fits));
        }
    }
    Ok(out)
}
