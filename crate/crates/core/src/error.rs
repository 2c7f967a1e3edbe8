use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({from}, {to}) references a node that does not exist")]
    DanglingEdge { from: NodeId, to: NodeId },
    #[error("node {node} references unknown color {color}")]
    UnknownColor { node: NodeId, color: usize },
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("color ranks are not a permutation of 0..{0}")]
    BadColorRanks(usize),
    #[error("graph is not acyclic: nodes {0:?} lie on or behind a cycle")]
    Cyclic(Vec<NodeId>),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({from}, {to}) has non-finite weight {weight}")]
    NonFiniteWeight {
        from: NodeId,
        to: NodeId,
        weight: f64,
    },
    #[error("tree edge ({from}, {to}) is not an edge of the graph")]
    MissingTreeEdge { from: NodeId, to: NodeId },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("instance has {colors} colors but the exact solver is limited to {capacity}")]
    Capacity { colors: usize, capacity: usize },
    #[error("exact solver requires an order-preserving coloring: edge ({from}, {to}) violates it")]
    NotOrderPreserving { from: NodeId, to: NodeId },
    #[error("precursor formula {formula} (mass {mass:.6}) is outside {ppm} ppm of precursor m/z {mz:.6}")]
    PrecursorMismatch {
        formula: String,
        mass: f64,
        mz: f64,
        ppm: f64,
    },
    #[error("cannot parse formula {0:?}")]
    BadFormula(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
