//! Hardware capability over time: classical throughput per dollar, quantum
//! logical throughput, physical qubit supply and error-correction overhead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// T-gate count at which the surface-code factory budget is pinned.
pub const REFERENCE_T_COUNT: f64 = 1e10;

/// `base_value · annual_factor^(year − base_year)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialTrend {
    pub base_year: i32,
    pub base_value: f64,
    pub annual_factor: f64,
}

impl ExponentialTrend {
    pub const fn new(base_year: i32, base_value: f64, annual_factor: f64) -> Self {
        ExponentialTrend {
            base_year,
            base_value,
            annual_factor,
        }
    }

    pub fn validate(&self, what: &str) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(self.base_value) || !ok(self.annual_factor) {
            return Err(Error::InvalidScenario(format!(
                "{what}: base_value and annual_factor must be positive"
            )));
        }
        Ok(())
    }

    pub fn value(&self, year: f64) -> f64 {
        self.base_value * self.annual_factor.powf(year - f64::from(self.base_year))
    }

    pub fn ln_value(&self, year: f64) -> f64 {
        self.base_value.ln() + (year - f64::from(self.base_year)) * self.annual_factor.ln()
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.base_value *= factor;
        self
    }
}

pub fn trend_value(trend: &ExponentialTrend, year: f64) -> f64 {
    trend.value(year)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassicalPlatform {
    /// Flop/s bought by a spend of one dollar per second.
    pub flops_trend: ExponentialTrend,
}

impl Default for ClassicalPlatform {
    fn default() -> Self {
        // 10³ H100s at 10¹⁵ flop/s each per $1/s, growing 40 %/yr
        ClassicalPlatform {
            flops_trend: ExponentialTrend::new(2025, 1e18, 1.4),
        }
    }
}

pub fn classical_throughput(platform: &ClassicalPlatform, year: f64) -> f64 {
    platform.flops_trend.value(year)
}

/// Surface-code constants. The defaults are common literature values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurfaceCodeParams {
    #[serde(rename = "A")]
    pub prefactor: f64,
    #[serde(rename = "p_th")]
    pub threshold_error: f64,
    pub cycle_time_s: f64,
    #[serde(rename = "cycles_per_t")]
    pub cycles_per_t_gate: f64,
    pub failure_budget: f64,
}

impl Default for SurfaceCodeParams {
    fn default() -> Self {
        SurfaceCodeParams {
            prefactor: 0.1,
            threshold_error: 1e-2,
            cycle_time_s: 1e-6,
            cycles_per_t_gate: 10.0,
            failure_budget: 1e-2,
        }
    }
}

impl SurfaceCodeParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| x > 0.0 && x < 1.0;
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if !pos(self.prefactor) || !pos(self.cycle_time_s) || !pos(self.cycles_per_t_gate) {
            return Err(Error::InvalidScenario(
                "surface_code: A, cycle_time_s and cycles_per_t must be positive".into(),
            ));
        }
        if !unit(self.threshold_error) || !unit(self.failure_budget) {
            return Err(Error::InvalidScenario(
                "surface_code: p_th and failure_budget must lie in (0, 1)".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantumMode {
    Simple,
    SurfaceCode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuantumPlatform {
    pub mode: QuantumMode,
    /// Logical T-gates/s bought by $1/s.
    pub logical_tgate_trend: ExponentialTrend,
    pub physical_qubit_trend: ExponentialTrend,
    /// Physical qubits per logical qubit (simple mode).
    pub ratio_trend: ExponentialTrend,
    /// Physical error rate per operation (surface-code mode).
    pub physical_error_trend: ExponentialTrend,
    pub surface_code: SurfaceCodeParams,
}

impl QuantumPlatform {
    pub fn validate(&self) -> Result<()> {
        self.logical_tgate_trend
            .validate("quantum.logical_tgate_trend")?;
        self.physical_qubit_trend
            .validate("quantum.physical_qubit_trend")?;
        self.ratio_trend.validate("quantum.ratio_trend")?;
        self.physical_error_trend
            .validate("quantum.physical_error_trend")?;
        self.surface_code.validate()
    }

    fn distance_at(&self, year: f64, t_count: f64) -> Result<u32> {
        let p = self.physical_error_trend.value(year);
        required_code_distance(p, t_count, &self.surface_code)
    }
}

// Relative slack when testing the failure budget, absorbs log rounding.
const BUDGET_LN_SLACK: f64 = 1e-12;

/// Smallest odd `d` with `t_count · A · (p/p_th)^((d+1)/2) ≤ failure_budget`.
pub fn required_code_distance(
    p_phys: f64,
    t_count: f64,
    params: &SurfaceCodeParams,
) -> Result<u32> {
    if !(p_phys < params.threshold_error) || p_phys <= 0.0 {
        return Err(Error::AboveThreshold {
            p_phys,
            threshold: params.threshold_error,
        });
    }
    let ln_ratio = (p_phys / params.threshold_error).ln();
    let target = params.failure_budget.ln() - t_count.max(1.0).ln() - params.prefactor.ln();
    let fits = |k: f64| k * ln_ratio <= target + BUDGET_LN_SLACK;

    // k = (d+1)/2; start from the real-valued solution and settle on the integer
    let mut k = (target / ln_ratio).ceil().max(1.0);
    while k > 1.0 && fits(k - 1.0) {
        k -= 1.0;
    }
    while !fits(k) {
        k += 1.0;
    }
    Ok((2.0 * k - 1.0) as u32)
}

/// Logical T-gates per second bought by $1/s.
///
/// In surface-code mode the factory budget is pinned so that the throughput
/// at the logical trend's base year and [`REFERENCE_T_COUNT`] equals that
/// trend's base value; later years gain both from the trend and from a
/// shrinking code distance.
pub fn quantum_logical_throughput(
    platform: &QuantumPlatform,
    year: f64,
    t_count: f64,
) -> Result<f64> {
    match platform.mode {
        QuantumMode::Simple => Ok(platform.logical_tgate_trend.value(year)),
        QuantumMode::SurfaceCode => {
            let base_year = f64::from(platform.logical_tgate_trend.base_year);
            let d_ref = platform.distance_at(base_year, REFERENCE_T_COUNT)?;
            let d = platform.distance_at(year, t_count)?;
            Ok(platform.logical_tgate_trend.value(year) * f64::from(d_ref) / f64::from(d))
        }
    }
}

/// Wall time of one logical T-gate at distance `d`.
pub fn logical_t_gate_seconds(d: u32, params: &SurfaceCodeParams) -> f64 {
    f64::from(d) * params.cycle_time_s * params.cycles_per_t_gate
}

pub fn physical_per_logical(platform: &QuantumPlatform, year: f64, t_count: f64) -> Result<f64> {
    match platform.mode {
        QuantumMode::Simple => Ok(platform.ratio_trend.value(year)),
        QuantumMode::SurfaceCode => {
            let d = f64::from(platform.distance_at(year, t_count)?);
            Ok(2.0 * d * d)
        }
    }
}

pub fn available_logical_qubits(
    platform: &QuantumPlatform,
    year: f64,
    t_count: f64,
) -> Result<f64> {
    Ok(platform.physical_qubit_trend.value(year) / physical_per_logical(platform, year, t_count)?)
}
