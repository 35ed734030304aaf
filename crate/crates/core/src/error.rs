use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("normalization error: norm {norm} deviates from 1 by more than {tol:e}")]
    Normalization { norm: f64, tol: f64 },

    #[error("non-finite amplitude in input")]
    NonFinite,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("geometry error{}: {detail}", context.map(|c| format!(" in context {c}")).unwrap_or_default())]
    Geometry {
        context: Option<usize>,
        detail: String,
    },

    #[error("search budget exceeded: {vertices} vertices > cap {cap}")]
    SearchBudgetExceeded { vertices: usize, cap: usize },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
