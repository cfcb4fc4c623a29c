use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("{num_vertices} vertices cannot be split into {parts} equal parts")]
    NotDivisible { num_vertices: usize, parts: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(&'static str),
    #[error("edge {0}-{1} is not in the tree")]
    EdgeNotInTree(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("no connected graph on {num_vertices} vertices has {edges} edges")]
    InfeasibleEdgeCount { num_vertices: usize, edges: usize },
    #[error("rejection budget of {attempts} attempts exhausted")]
    BudgetExhausted { attempts: usize },
    #[error("enumeration guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: &'static str, limit: u64 },
    #[error("slack gadget needs an even n >= 8, got {0}")]
    InvalidGadget(usize),
    #[error("oracle disagreement: {0}")]
    OracleMismatch(&'static str),
}
