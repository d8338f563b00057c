//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value for {name}")]
    NonFinite { name: &'static str },

    #[error("{name} = {value} outside admissible range {admissible}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        admissible: String,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("rotation axis norm {norm} deviates from 1 by more than 1e-9")]
    NonUnitAxis { norm: f64 },

    #[error("no feasible grid point in the scan window")]
    EmptyFeasibleSet,

    #[error(
        "state too delocalized: circular variance {circular_variance:.4} exceeds threshold {threshold}"
    )]
    Delocalized {
        circular_variance: f64,
        threshold: f64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
