use thiserror::Error;

use crate::duality::Rejection;
use crate::lp::LpError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ambient dimension {dim} exceeds the configured cap of {cap}")]
    Capacity { dim: usize, cap: usize },

    #[error("degenerate cone: {0}")]
    DegenerateCone(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("direction grids differ")]
    GridMismatch,

    #[error("inadmissible dual pair: {0}")]
    Inadmissible(Rejection),

    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
