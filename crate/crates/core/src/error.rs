use thiserror::Error;

use crate::graph::Point;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid matrix: {0}")]
    InvalidAsm(String),
    #[error("corrupt height matrix at ({i},{j}): mixed difference {diff}")]
    CorruptHeight { i: usize, j: usize, diff: i64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("no vertex at {0}")]
    MissingVertex(Point),
    #[error("embedding is not planar: {0}")]
    NonPlanar(String),
    #[error("odd vertex count {0}: no perfect matching")]
    OddVertexCount(usize),
    #[error("degenerate renewal site: {0}")]
    DegenerateSite(String),
    #[error("rewrite precondition violated: {0}")]
    Precondition(String),
    #[error("step {index} ({op}) failed: {reason}")]
    StepFailed { index: usize, op: String, reason: String },
    #[error("bijection rule failure: {0}")]
    Bijection(String),
    #[error("formula error: {0}")]
    Formula(String),
}

pub type Result<T> = std::result::Result<T, Error>;
