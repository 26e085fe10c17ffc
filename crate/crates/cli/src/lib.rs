//! Library side of the `plexnet` command: configuration, per-layer
//! analysis and the pipeline driver.

pub mod analysis;
pub mod config;
pub mod pipeline;

pub use config::{ConfigError, PipelineConfig};
pub use pipeline::{run_pipeline, write_atomic, PipelineOutcome};
