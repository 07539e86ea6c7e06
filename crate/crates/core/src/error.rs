use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("path passes within {distance:.3e} of singular point {point} (clearance {clearance:.3e})")]
    SingularityProximity { point: String, distance: f64, clearance: f64 },
    #[error("transport did not converge: {0}")]
    NonConvergence(String),
    #[error("path is discontinuous at segment {0}")]
    Discontinuity(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
    #[error("zero function has no valuation")]
    ZeroFunction,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("precision too low: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    PrecisionTooLow { residual: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
