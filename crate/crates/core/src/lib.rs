//! Forecasts when fault-tolerant quantum chemistry beats classical methods
//! on wall-clock time at equal spend.
//!
//! Costs are evaluated in the log domain throughout, so exponential laws at
//! large sizes never overflow.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod advantage;
pub mod calibrate;
pub mod catalog;
pub mod chem;
pub mod cost;
pub mod error;
pub mod hardware;
pub mod report;
pub mod scenario;

pub use advantage::{
    advantage_region, advantage_region_at, first_advantage_year, qea_threshold, AdvantageRegion,
    Binding, DisruptionResult, FeasibilityEnvelope, Threshold, Verdict,
};
pub use catalog::{builtin_catalog, AlgorithmKind, AlgorithmSpec, ComplexityModel, Magnitude};
pub use error::{Error, Result};
pub use scenario::{default_scenario, Scenario, Variation};
