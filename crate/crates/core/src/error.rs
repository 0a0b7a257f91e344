use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element:?} does not belong to a {kind} group")]
    KindMismatch { kind: &'static str, element: Vec<i64> },

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("ball enumeration exceeded the cap of {cap} elements; lower the radius or raise --cap")]
    ResourceLimit { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("induced graph is disconnected ({components} components)")]
    DisconnectedResult { components: usize },

    #[error("graph violates the graph-with-boundary invariants: {}", format_violations(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("function vanishes on the whole boundary; Rayleigh quotient undefined")]
    ZeroBoundaryNorm,

    #[error("sigma_1 undefined: the boundary has {boundary} vertex (need at least 2)")]
    SigmaOneUndefined { boundary: usize },

    #[error("vertex {vertex} carries no host label; certificates need host-graph distances")]
    MissingHostLabels { vertex: usize },

    #[error("internal invariant failure: {0}")]
    Invariant(String),

    #[error("oracle limited to {cap} vertices, graph has {actual}")]
    OracleTooLarge { cap: usize, actual: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
