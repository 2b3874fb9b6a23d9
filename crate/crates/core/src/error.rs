use thiserror::Error;

use crate::instance::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Structural problems with an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("instance needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("node {node} is out of range for n = {n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("edge {{{0}, {0}}} is a loop")]
    LoopEdge(NodeId),
    #[error("edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(NodeId, NodeId),
    #[error("negative cost on edge {{{0}, {1}}}")]
    NegativeCost(NodeId, NodeId),
    #[error("tree edges do not form a spanning tree: {0}")]
    NotATree(String),
    #[error("link at position {position} carries id {id}")]
    BadLinkId { position: usize, id: usize },
    #[error("graph is not 2-node connected")]
    Not2NC,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Validation(#[from] ValidationError),
    #[error("schema error at {context}: {reason}")]
    Schema { context: String, reason: String },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("partition has {blocks} blocks, enumeration cap is {cap}")]
    TooManyBlocks { blocks: usize, cap: usize },
    #[error("instance has no links")]
    NoLinks,
    #[error("node {0} is a leaf of the tree")]
    LeafNode(NodeId),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("node {node} has degree {degree}, inflation needs at least 2")]
    DegreeTooSmall { node: NodeId, degree: usize },
    #[error("input point violates the source polytope: {0}")]
    InfeasibleInput(String),
    #[error("LP is unbounded")]
    Unbounded,
    #[error("certificate check failed: {0}")]
    CheckFailed(String),
    #[error("certificate digest {found} does not match instance digest {expected}")]
    MismatchedDigest { expected: String, found: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Schema { .. } => 2,
            Error::Infeasible(_) | Error::InfeasibleInput(_) => 3,
            Error::InstanceTooLarge(_) | Error::TooManyBlocks { .. } => 4,
            Error::CheckFailed(_) | Error::MismatchedDigest { .. } | Error::MalformedTrace(_) => 5,
            _ => 1,
        }
    }
}
