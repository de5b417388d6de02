use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate edge ({u}, {v}) on line {line}")]
    DuplicateEdge { u: String, v: String, line: usize },

    #[error("label file line {line}: vertex {vertex} does not appear in the edge list")]
    DanglingLabel { vertex: String, line: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("superstep {superstep}: vertex {sender} sent a message to {target}, which is not a live vertex")]
    InvalidTarget {
        superstep: usize,
        sender: VertexId,
        target: VertexId,
    },

    #[error("graph is not connected")]
    Disconnected,

    #[error("input is not a tree: {0}")]
    NotATree(String),

    #[error("list links contain a cycle or do not reach a head within {supersteps} supersteps")]
    NoProgress { supersteps: usize },

    #[error("negative edge weight {weight} on edge ({u}, {v})")]
    NegativeWeight {
        u: VertexId,
        v: VertexId,
        weight: i64,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("empty superstep trace")]
    EmptyTrace,

    #[error("need at least 4 points for a growth fit, got {0}")]
    TooFewPoints(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
