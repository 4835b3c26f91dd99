use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("stereographic projection is undefined at its projection point")]
    ProjectionPoint,

    #[error("non-finite value while evaluating {what} near ({u}, {v})")]
    NonFinite { what: &'static str, u: f64, v: f64 },

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("two-form density {density} is not positive at ({u}, {v}): J-convexity fails")]
    Degenerate { density: f64, u: f64, v: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} exceeds target {target:e} (value {value})")]
    QuadratureDiverged {
        value: f64,
        estimate: f64,
        target: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
