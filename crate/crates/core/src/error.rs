use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {0}: must be at least 1")]
    InvalidOrder(usize),

    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { n: usize, k: i64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("map is not an automorphism of the group")]
    NotAutomorphism,

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("subset is not closed: {0}")]
    NotClosed(String),

    #[error("table is not a quandle: {0}")]
    NotAQuandle(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("budget: order {order} exceeds the brute-force ceiling {ceiling}")]
    BruteCeiling { order: usize, ceiling: usize },

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("more than {cap} mappings; rerun in count-only mode")]
    MappingCapExceeded { cap: usize },

    #[error("inconsistent results: {0}")]
    Inconsistency(String),
}
