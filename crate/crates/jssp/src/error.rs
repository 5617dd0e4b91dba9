use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("instance shapes differ: {0}")]
    InstanceMismatch(String),

    #[error("machine orders induce a cycle: {0}")]
    Cyclic(String),

    #[error("enumeration too large: {count} sequences exceed cap {cap}")]
    SizeExceeded { count: u128, cap: u128 },

    #[error("solver hit its node/time limit before proving optimality")]
    LimitExceeded,

    #[error("constrained solve unproven for edge (machine {machine}, jobs {job_a}/{job_b})")]
    UnprovenEdge {
        machine: usize,
        job_a: usize,
        job_b: usize,
    },

    #[error("simulated annealing exceeded its iteration cap")]
    SaTimeout,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
