use std::path::PathBuf;

use thiserror::Error;

use crate::graph::{EdgeKind, PersonId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({source_id}, {target}, {kind}) references unknown node {missing}")]
    UnknownEndpoint {
        source_id: PersonId,
        target: PersonId,
        kind: EdgeKind,
        missing: PersonId,
    },
    #[error("self-loop on {0} is not allowed")]
    SelfLoop(PersonId),
    #[error("duplicate node id {0}")]
    DuplicateNode(PersonId),
    #[error("node id must be non-empty")]
    EmptyId,
    #[error("unknown node {0}")]
    UnknownNode(PersonId),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph is disconnected ({components} components); pass the giant component")]
    DisconnectedGraph { components: usize },

    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("duplicate record id {0}")]
    DuplicateId(PersonId),
    #[error("unknown relation kind {0:?}")]
    UnknownRelationKind(String),
    #[error("{from} references {target}, which has no record")]
    DanglingReference { from: PersonId, target: PersonId },

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("only {performed} split events possible, {requested} requested")]
    ExhaustedEdges { requested: usize, performed: usize },
    #[error("partitions cover different node sets")]
    NodeSetMismatch,

    #[error("insufficient support for fit: {0}")]
    InsufficientSupport(String),
    #[error("estimated exponent {0} is not a valid discrete power law (must exceed 1)")]
    InvalidExponent(f64),

    #[error("annotation references node {0} that is not in the graph")]
    AnnotationMismatch(PersonId),
    #[error("report bundle is empty")]
    EmptyBundle,
    #[error("cannot parse document: {0}")]
    Parse(String),

    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
