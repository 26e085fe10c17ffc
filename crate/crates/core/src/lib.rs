//! Analysis toolkit for multiplex person-to-person networks.
//!
//! The pipeline is: [`ingest`] profile records into a [`MultiplexNetwork`],
//! extract one [`LayerGraph`] per relationship type, then run [`centrality`],
//! [`community`], [`clique`] and [`degree_stats`] analyses and serialize the
//! results with [`export`].

pub mod centrality;
pub mod clique;
pub mod community;
pub mod degree_stats;
pub mod error;
pub mod export;
pub mod graph;
pub mod ingest;
mod paths;

pub use error::{Error, Result};
pub use graph::{EdgeKind, LayerGraph, MultiplexNetwork, PersonId};
