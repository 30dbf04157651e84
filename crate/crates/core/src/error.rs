use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SummaError {
    #[error("domain error in {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    #[error("argument {value} beyond the overflow guard {guard} in {function}")]
    Overflow {
        function: &'static str,
        value: f64,
        guard: f64,
    },

    #[error("{what} did not converge: tail estimate {tail:e} exceeds {limit:e}")]
    NonConvergence {
        what: &'static str,
        tail: f64,
        limit: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("nodes {i} and {j} are closer than the collision threshold ({gap:e})")]
    NearCollision { i: usize, j: usize, gap: f64 },

    #[error("invalid kernel spec: {0}")]
    InvalidSpec(String),

    #[error("pole: A_k^alpha is undefined for alpha = {0}")]
    Pole(f64),

    #[error("grid size {0} is not a power of two >= 4")]
    GridSize(usize),

    #[error("aliasing: frequency support {support} does not fit a grid of {grid} points")]
    Aliasing { support: f64, grid: usize },

    #[error("under-resolved: {0}")]
    UnderResolution(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("empty index set")]
    EmptyIndexSet,

    #[error("unknown test function '{0}'")]
    UnknownTestFunction(String),
}

pub type Result<T> = std::result::Result<T, SummaError>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> SummaError {
    SummaError::Domain {
        function,
        detail: detail.into(),
    }
}
