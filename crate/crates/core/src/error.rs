use thiserror::Error;

use crate::bellpair::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} {index} out of range {min}..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("parameter `{name}` = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("state violates invariant `{invariant}`: {detail}")]
    InvalidState {
        invariant: &'static str,
        detail: String,
    },

    #[error("matrix is not unitary (max |U†U - 1| = {0:e})")]
    NotUnitary(f64),

    #[error("invalid Bell pair: {}", .0.failures().join("; "))]
    InvalidPair(Box<ValidationReport>),

    #[error("{0} requires a pure state; mixed states are evaluation-only")]
    MixedStateUnsupported(&'static str),

    #[error("target `{name}` has norm {norm}, expected a unit vector")]
    NonUnitTarget { name: &'static str, norm: f64 },

    #[error("solver did not converge: best objective {objective:e} after {restarts} restarts")]
    NonConvergence { objective: f64, restarts: usize },

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
