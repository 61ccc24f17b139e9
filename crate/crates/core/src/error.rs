use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    Capacity { n: usize, max: usize },

    #[error("operation undefined on the empty graph")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    Edgeless,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("frontier memory budget of {budget} bytes exceeded while building level {level}")]
    BudgetExceeded { level: usize, budget: usize },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
