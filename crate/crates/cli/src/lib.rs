//! Parsing and serialization behind the `wehrhart` command line tool.

pub mod expr;
pub mod json;

use thiserror::Error;

pub use expr::{parse_weight, Sign, Var, WeightExpr};
pub use json::{parse_polytope, serialize_polytope};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable {name} at position {position} is out of range for dimension {dim}")]
    VariableOutOfRange {
        position: usize,
        name: String,
        dim: usize,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polytope: {0}")]
    Polytope(String),
    #[error("invalid rational {0:?}")]
    Rational(String),
    #[error("malformed result document: {0}")]
    Result(String),
    #[error(transparent)]
    Core(#[from] wehrhart::Error),
}
