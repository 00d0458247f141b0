use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("algorithm `{name}` is {actual}, expected {expected}")]
    KindMismatch {
        name: String,
        expected: &'static str,
        actual: &'static str,
    },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error(
        "physical error rate {p_phys:e} is not below the surface-code threshold {threshold:e}"
    )]
    AboveThreshold { p_phys: f64, threshold: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("molecule contains element `{0}` missing from the basis heuristic")]
    MissingElement(String),

    #[error("unknown basis heuristic `{0}`")]
    UnknownHeuristic(String),

    #[error("calibration anchor {anchor} cannot be reached: {reason}")]
    InfeasibleAnchor { anchor: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
