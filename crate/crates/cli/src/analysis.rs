//! Loading input and running the per-layer analyses shared by the
//! subcommands and the pipeline.

use std::path::Path;

use anyhow::{bail, Context};
use log::{info, warn};
use plexnet::centrality::{CentralitySet, RankedTable};
use plexnet::clique::{maximal_cliques, maximum_cliques, CliqueSet};
use plexnet::community::{
    compare_partitions, fiedler_bisection, girvan_newman, GnDendrogram, SpectralBisection,
    DEFAULT_SPECTRAL_TOLERANCE,
};
use plexnet::degree_stats::{
    degree_distribution, fit_power_law_ls, fit_power_law_mle, fit_table, FitMethod,
};
use plexnet::export::tables::{centrality_csv, fit_csv, partition_csv};
use plexnet::export::{
    force_layout, layer_to_graphml, render_clique_report, to_dot, CliqueReport, FitOutcome,
    LayerReport, NodeAnnotations,
};
use plexnet::ingest::{read_records, resolve, DanglingPolicy, IngestSummary};
use plexnet::{EdgeKind, LayerGraph, MultiplexNetwork};

use crate::config::{CliqueConfig, PipelineConfig};

pub struct Loaded {
    pub net: MultiplexNetwork,
    pub summary: IngestSummary,
}

pub fn load(path: &Path, policy: DanglingPolicy) -> anyhow::Result<Loaded> {
    let records = read_records(path)?;
    let (net, summary) =
        resolve(&records, policy).with_context(|| format!("resolving {}", path.display()))?;
    for d in &summary.dangling_references {
        warn!("{} lists unknown {} relation {}", d.from, d.kind, d.target);
    }
    info!(
        "loaded {} nodes and {} edges from {}",
        net.node_count(),
        net.total_edge_count(),
        path.display()
    );
    Ok(Loaded { net, summary })
}

/// Layers to analyse: the requested ones, or every layer with edges.
pub fn select_layers(net: &MultiplexNetwork, requested: &[EdgeKind]) -> Vec<EdgeKind> {
    if requested.is_empty() {
        EdgeKind::ALL
            .into_iter()
            .filter(|&k| net.edge_count(k) > 0)
            .collect()
    } else {
        let mut kinds = requested.to_vec();
        kinds.sort();
        kinds.dedup();
        kinds
    }
}

/// The layer without its isolated nodes.
pub fn connected_part(full: &LayerGraph) -> LayerGraph {
    let members: Vec<usize> = (0..full.node_count())
        .filter(|&i| full.degree_of(i) > 0)
        .collect();
    full.induced(&members)
}

/// The graph centrality and community analyses run on.
pub fn analysis_graph(
    net: &MultiplexNetwork,
    kind: EdgeKind,
    giant: bool,
) -> anyhow::Result<LayerGraph> {
    let full = net.layer(kind);
    if full.edge_count() == 0 {
        bail!("the {kind} layer has no edges");
    }
    Ok(if giant {
        full.giant_component()?
    } else {
        connected_part(&full)
    })
}

pub fn clique_set(full: &LayerGraph, cfg: &CliqueConfig) -> CliqueSet {
    let set = if cfg.maximum_only {
        maximum_cliques(full)
    } else {
        maximal_cliques(full)
    };
    let floor = if cfg.include_trivial { 1 } else { 2 };
    set.with_min_size(cfg.min_size.max(floor))
}

pub fn clique_report(full: &LayerGraph, set: CliqueSet) -> CliqueReport {
    let components = set.component_labels(full);
    CliqueReport { set, components }
}

pub fn fit_outcome(full: &LayerGraph, method: FitMethod, k_min: usize) -> FitOutcome {
    let result = match method {
        FitMethod::LogLogLeastSquares => {
            degree_distribution(full).and_then(|d| fit_power_law_ls(&d, k_min))
        }
        FitMethod::MaximumLikelihood => {
            let degrees: Vec<usize> = (0..full.node_count()).map(|i| full.degree_of(i)).collect();
            fit_power_law_mle(&degrees, k_min)
        }
    };
    FitOutcome {
        method,
        k_min,
        result: result.map_err(|e| e.to_string()),
    }
}

/// Everything computed for one layer, plus its artifacts as
/// `(file name, contents)` pairs.
pub struct LayerAnalysis {
    pub report: LayerReport,
    pub artifacts: Vec<(String, String)>,
}

pub fn analyze_layer(
    net: &MultiplexNetwork,
    kind: EdgeKind,
    cfg: &PipelineConfig,
) -> anyhow::Result<LayerAnalysis> {
    let full = net.layer(kind);
    let g = analysis_graph(net, kind, cfg.giant_component)?;
    let mut report = LayerReport::new(kind, connected_part(&full).node_count(), full.edge_count());
    report.analyzed_nodes = g.node_count();
    report.giant_component = cfg.giant_component;
    let mut artifacts = Vec::new();
    let mut ann = NodeAnnotations::default();

    if cfg.centrality.enabled {
        let set = CentralitySet::compute(&g).context("centrality")?;
        report.centrality = Some(RankedTable::from_set(&set, cfg.centrality.top));
        artifacts.push(("centrality.csv".into(), centrality_csv(&set)?));
        ann = ann.with_centrality(&set);
    }

    if cfg.communities.enabled {
        let (gn, fiedler) = communities(&g, cfg.communities.cuts)?;
        if let Some(first) = gn.first_cut() {
            report.comparison = Some(compare_partitions(&first.partition, &fiedler.partition)?);
        }
        artifacts.push((
            "partition_gn.csv".into(),
            partition_csv(gn.last_partition())?,
        ));
        artifacts.push((
            "partition_fiedler.csv".into(),
            partition_csv(&fiedler.partition)?,
        ));
        ann = ann.with_partition(gn.last_partition());
        report.girvan_newman = Some(gn);
        report.fiedler = Some(fiedler);
    }

    if cfg.cliques.enabled {
        let listed = clique_report(&full, clique_set(&full, &cfg.cliques));
        artifacts.push(("cliques.txt".into(), render_clique_report(&listed)));
        report.cliques = Some(clique_report(&full, maximum_cliques(&full)));
    }

    if cfg.fit.enabled {
        report.fits = cfg
            .fit
            .methods
            .iter()
            .map(|&m| fit_outcome(&full, m, cfg.fit.k_min))
            .collect();
        match report.fits.iter().find_map(|f| f.result.as_ref().ok()) {
            Some(fit) => {
                let rows = fit_table(&degree_distribution(&full)?, fit);
                artifacts.push(("fit.csv".into(), fit_csv(&rows, false)?));
            }
            None => warn!("{kind}: no power-law fit succeeded; fit.csv not written"),
        }
    }

    if cfg.layout.enabled {
        let seed = cfg.layout.seed.context("layout needs a seed")?;
        let layout = force_layout(&g, seed, cfg.layout.iterations, cfg.layout.params())?;
        ann = ann.with_layout(&layout);
    }
    artifacts.push(("layer.graphml".into(), layer_to_graphml(net, &g, &ann)?));
    artifacts.push(("layer.dot".into(), to_dot(net, &g, &ann)?));

    Ok(LayerAnalysis { report, artifacts })
}

pub fn communities(
    g: &LayerGraph,
    cuts: usize,
) -> anyhow::Result<(GnDendrogram, SpectralBisection)> {
    let gn = girvan_newman(g, cuts).context("Girvan-Newman")?;
    let fiedler = fiedler_bisection(g, DEFAULT_SPECTRAL_TOLERANCE).context("Fiedler bisection")?;
    if fiedler.is_degenerate() {
        warn!(
            "second Laplacian eigenvalue has multiplicity {}; using the canonical eigenvector",
            fiedler.multiplicity
        );
    }
    Ok((gn, fiedler))
}
