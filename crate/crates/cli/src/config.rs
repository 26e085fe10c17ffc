//! Pipeline configuration, from a TOML file and/or command-line flags.

use std::path::{Path, PathBuf};

use plexnet::degree_stats::FitMethod;
use plexnet::export::layout::DEFAULT_ITERATIONS;
use plexnet::export::LayoutParams;
use plexnet::ingest::DanglingPolicy;
use plexnet::EdgeKind;
use serde::Deserialize;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("no input file given (use --input or `input` in the config file)")]
    MissingInput,
    #[error("community detection needs at least one cut, got cuts = 0")]
    ZeroCuts,
    #[error("layout is enabled but no seed was given (use --seed or `[layout] seed`)")]
    MissingSeed,
    #[error("{0} must be at least 1")]
    NotPositive(&'static str),
    #[error("fit is enabled but no methods are listed")]
    NoFitMethods,
    #[error("cannot read config {path}: {reason}")]
    Unreadable { path: PathBuf, reason: String },
    #[error("invalid config {path}: {reason}")]
    Invalid { path: PathBuf, reason: String },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CentralityConfig {
    pub enabled: bool,
    pub top: usize,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        CentralityConfig {
            enabled: true,
            top: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CommunityConfig {
    pub enabled: bool,
    /// Number of Girvan-Newman splits to record.
    pub cuts: usize,
}

impl Default for CommunityConfig {
    fn default() -> Self {
        CommunityConfig {
            enabled: true,
            cuts: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CliqueConfig {
    pub enabled: bool,
    pub min_size: usize,
    pub maximum_only: bool,
    /// Keep isolated nodes as cliques of size 1.
    pub include_trivial: bool,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig {
            enabled: true,
            min_size: 2,
            maximum_only: false,
            include_trivial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitConfig {
    pub enabled: bool,
    /// The exported table uses the first method that succeeds.
    pub methods: Vec<FitMethod>,
    pub k_min: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            enabled: true,
            methods: vec![FitMethod::LogLogLeastSquares, FitMethod::MaximumLikelihood],
            k_min: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LayoutConfig {
    pub enabled: bool,
    pub seed: Option<u64>,
    pub iterations: usize,
    pub attraction: f64,
    pub repulsion: f64,
    pub gravity: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        let p = LayoutParams::default();
        LayoutConfig {
            enabled: true,
            seed: None,
            iterations: DEFAULT_ITERATIONS,
            attraction: p.attraction,
            repulsion: p.repulsion,
            gravity: p.gravity,
        }
    }
}

impl LayoutConfig {
    pub fn params(&self) -> LayoutParams {
        LayoutParams {
            attraction: self.attraction,
            repulsion: self.repulsion,
            gravity: self.gravity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub out_dir: PathBuf,
    /// Empty means every layer that has edges.
    pub layers: Vec<EdgeKind>,
    pub dangling: DanglingPolicy,
    pub giant_component: bool,
    pub centrality: CentralityConfig,
    pub communities: CommunityConfig,
    pub cliques: CliqueConfig,
    pub fit: FitConfig,
    pub layout: LayoutConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: None,
            out_dir: PathBuf::from("plexnet-out"),
            layers: Vec::new(),
            dangling: DanglingPolicy::default(),
            giant_component: true,
            centrality: CentralityConfig::default(),
            communities: CommunityConfig::default(),
            cliques: CliqueConfig::default(),
            fit: FitConfig::default(),
            layout: LayoutConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Invalid {
            path: path.to_path_buf(),
            reason: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Unreadable {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        let mut cfg = Self::from_toml(&text, path)?;
        // Relative paths in a config file are relative to the file itself.
        if let Some(dir) = path.parent() {
            if let Some(input) = cfg.input.as_mut().filter(|p| p.is_relative()) {
                *input = dir.join(&*input);
            }
            if cfg.out_dir.is_relative() {
                cfg.out_dir = dir.join(&cfg.out_dir);
            }
        }
        Ok(cfg)
    }

    /// Checks flag combinations before any work is done.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.input.is_none() {
            return Err(ConfigError::MissingInput);
        }
        if self.communities.enabled && self.communities.cuts == 0 {
            return Err(ConfigError::ZeroCuts);
        }
        if self.centrality.enabled && self.centrality.top == 0 {
            return Err(ConfigError::NotPositive("centrality top"));
        }
        if self.fit.enabled {
            if self.fit.methods.is_empty() {
                return Err(ConfigError::NoFitMethods);
            }
            if self.fit.k_min == 0 {
                return Err(ConfigError::NotPositive("fit k_min"));
            }
        }
        if self.layout.enabled {
            if self.layout.seed.is_none() {
                return Err(ConfigError::MissingSeed);
            }
            if self.layout.iterations == 0 {
                return Err(ConfigError::NotPositive("layout iterations"));
            }
        }
        Ok(())
    }
}
