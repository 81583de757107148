use thiserror::Error;

use crate::graph::{EdgeId, VertexId};
use crate::lists::Color;

/// Why a chain could not be shifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftFailure {
    StartNotBlank,
    ColorNotInList,
    ColorClash,
}

impl std::fmt::Display for ShiftFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ShiftFailure::StartNotBlank => "start edge is not blank",
            ShiftFailure::ColorNotInList => "shifted color is not in the edge's list",
            ShiftFailure::ColorClash => "shifted color clashes at an endpoint",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: usize },

    #[error("edge {index} references vertex {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("local list-size bound violated at vertex {0}")]
    BoundViolation(VertexId),

    #[error("list assignment has {got} lists, expected {expected}")]
    ListCountMismatch { got: usize, expected: usize },

    #[error("color {color} on edge {edge} clashes at vertex {vertex}")]
    ImproperAssignment {
        edge: EdgeId,
        color: Color,
        vertex: VertexId,
    },

    #[error("color {color} is not in the list of edge {edge}")]
    ColorNotInList { edge: EdgeId, color: Color },

    #[error("edge {0} is not blank")]
    EdgeNotBlank(EdgeId),

    #[error("edge {0} is blank")]
    EdgeBlank(EdgeId),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("chain not shiftable at position {index}: {reason}")]
    NotShiftable { index: usize, reason: ShiftFailure },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no available color at vertex {0}")]
    AvailabilityEmpty(VertexId),

    #[error("internal guarantee failed: {0}")]
    LemmaViolation(String),

    #[error("step budget of {budget} content steps exceeded")]
    StepBudgetExceeded { budget: u64 },

    #[error("instance has {m} edges, oracle limit is {limit}")]
    TooLarge { m: usize, limit: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("edge lists must be given on every edge line or on none")]
    MixedListPresence,

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::LemmaViolation(_) | Error::StepBudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
