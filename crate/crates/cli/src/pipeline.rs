//! End-to-end run: ingest, per-layer analyses, artifacts.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::{error, info};
use plexnet::export::{render_report, ReportBundle};

use crate::analysis::{analyze_layer, load, select_layers};
use crate::config::PipelineConfig;

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| anyhow!(e.error))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[derive(Debug)]
pub struct PipelineOutcome {
    pub written: Vec<PathBuf>,
    pub report: String,
}

/// Artifacts of one layer: its directory name and `(file name, contents)` pairs.
pub type LayerFiles = (String, Vec<(String, String)>);

/// Builds the report bundle for every selected layer. Layers that fail are
/// returned separately so callers can decide what to keep.
pub fn analyze(
    cfg: &PipelineConfig,
) -> anyhow::Result<(
    ReportBundle,
    Vec<(String, Vec<(String, String)>)>,
    Vec<anyhow::Error>,
)> {
    cfg.validate()?;
    let input = cfg.input.as_deref().expect("validated");
    let loaded = load(input, cfg.dangling)?;
    let mut bundle = ReportBundle {
        summary: Some(loaded.summary),
        layers: Vec::new(),
    };
    let mut files = Vec::new();
    let mut failures = Vec::new();
    for kind in select_layers(&loaded.net, &cfg.layers) {
        info!("analysing the {kind} layer");
        match analyze_layer(&loaded.net, kind, cfg) {
            Ok(analysis) => {
                bundle.layers.push(analysis.report);
                files.push((kind.to_string(), analysis.artifacts));
            }
            Err(e) => {
                let e = e.context(format!("{kind} layer"));
                error!("{e:#}");
                failures.push(e);
            }
        }
    }
    Ok((bundle, files, failures))
}

pub fn run_pipeline(cfg: &PipelineConfig) -> anyhow::Result<PipelineOutcome> {
    let (bundle, files, failures) = analyze(cfg)?;
    let mut written = Vec::new();
    for (dir, artifacts) in files {
        for (name, contents) in artifacts {
            let path = cfg.out_dir.join(&dir).join(name);
            write_atomic(&path, &contents)?;
            written.push(path);
        }
    }
    let summary = bundle
        .summary
        .as_ref()
        .expect("pipeline bundles carry a summary");
    let path = cfg.out_dir.join("summary.json");
    write_atomic(&path, &(summary.to_json() + "\n"))?;
    written.push(path);

    let report = render_report(&bundle)?;
    let path = cfg.out_dir.join("report.txt");
    write_atomic(&path, &report)?;
    written.push(path);

    if let Some(first) = failures.into_iter().next() {
        return Err(first.context("pipeline finished with failed layers"));
    }
    Ok(PipelineOutcome { written, report })
}
