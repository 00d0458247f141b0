//! Threshold problem size for quantum economic advantage, the feasibility
//! envelope and the first year of disruption.

use std::fmt;

use crate::catalog::{AlgorithmKind, AlgorithmSpec};
use crate::cost::{self, ln_classical_seconds, ln_quantum_seconds};
use crate::error::Result;
use crate::hardware::{self, QuantumMode};
use crate::scenario::Scenario;

/// Slack, in natural-log units, under which two costs count as equal.
/// Equality is resolved in favour of the quantum side.
pub const TIE_LN_TOLERANCE: f64 = 1e-10;

/// Upper end of every integer search over problem sizes.
pub const MAX_PROBLEM_SIZE: u64 = 1 << 50;

// ln N beyond which a polynomial crossover search gives up (N ≈ 1e304)
const MAX_LN_SIZE: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Smallest real size at which the quantum runtime is no larger.
    At(f64),
    Never,
}

impl Threshold {
    pub fn size(self) -> Option<f64> {
        match self {
            Threshold::At(n) => Some(n),
            Threshold::Never => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityEnvelope {
    pub qubit_limited_n: u64,
    pub deadline_limited_n: u64,
    pub max_feasible_n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageRegion {
    pub year: f64,
    pub threshold: Threshold,
    pub min_advantageous_n: Option<u64>,
    pub envelope: FeasibilityEnvelope,
    pub nonempty: bool,
}

impl AdvantageRegion {
    pub fn max_feasible_n(&self) -> u64 {
        self.envelope.max_feasible_n
    }

    /// Which constraint keeps this region empty; `None` when it is not empty.
    pub fn blocking_constraint(&self) -> Binding {
        if self.nonempty {
            return Binding::None;
        }
        match self.min_advantageous_n {
            None => Binding::Qea,
            Some(_) if self.envelope.qubit_limited_n <= self.envelope.deadline_limited_n => {
                Binding::Qubits
            }
            Some(_) => Binding::Deadline,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Year(i32),
    BeyondHorizon { horizon: i32 },
    Never,
}

impl Verdict {
    /// Total order for comparisons: years, then beyond-horizon, then never.
    pub fn sort_key(self) -> i64 {
        match self {
            Verdict::Year(y) => i64::from(y),
            Verdict::BeyondHorizon { horizon } => i64::from(horizon) + 1,
            Verdict::Never => i64::MAX,
        }
    }

    pub fn year(self) -> Option<i32> {
        match self {
            Verdict::Year(y) => Some(y),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Year(y) => write!(f, "{y}"),
            Verdict::BeyondHorizon { horizon } => write!(f, ">{horizon}"),
            Verdict::Never => f.write_str("N/A"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Binding {
    Qea,
    Qubits,
    Deadline,
    None,
}

impl Binding {
    pub fn as_str(self) -> &'static str {
        match self {
            Binding::Qea => "qea",
            Binding::Qubits => "qubits",
            Binding::Deadline => "deadline",
            Binding::None => "none",
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisruptionResult {
    pub verdict: Verdict,
    /// The constraint that blocked advantage in the last year before the verdict.
    pub binding_constraint: Binding,
}

fn check_pair(classical: &AlgorithmSpec, quantum: &AlgorithmSpec) -> Result<()> {
    classical.expect_kind(AlgorithmKind::Classical)?;
    quantum.expect_kind(AlgorithmKind::Quantum)
}

/// ln(quantum seconds) − ln(classical seconds) at a continuous size.
fn runtime_gap(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    n: f64,
    year: f64,
    s: &Scenario,
) -> Result<f64> {
    Ok(ln_quantum_seconds(quantum, n, year, s)? - ln_classical_seconds(classical, n, year, s))
}

/// Bisection in ln N on `[lo, hi]` where the gap is positive at `lo` and
/// non-positive at `hi`. Returns the `hi` end once the bracket is narrower
/// than 1e-12 relative.
fn bisect_ln(mut gap: impl FnMut(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if gap(mid.exp())? <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi.exp())
}

pub fn qea_threshold(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    year: f64,
    scenario: &Scenario,
) -> Result<Threshold> {
    check_pair(classical, quantum)?;
    let gap = |n: f64| runtime_gap(classical, quantum, n, year, scenario);
    let gap_at_one = gap(1.0)?;
    if gap_at_one <= 0.0 {
        return Ok(Threshold::At(1.0));
    }

    let (c, q) = (&classical.cost_law, &quantum.cost_law);
    let exponent_gap = q.size_exponent - c.size_exponent;
    let base_gap = q.exp_base.ln() - c.exp_base.ln();

    if base_gap == 0.0 {
        // Quantum cost grows at least as fast and already costs more per problem.
        if exponent_gap >= 0.0 {
            return Ok(Threshold::Never);
        }
        if scenario.quantum.mode == QuantumMode::Simple {
            // N* = (R·c_q·ε^(−b) / (F·c_c))^(1/(a_c − a_q))
            let r = cost::overhead_ratio(scenario, year)?;
            let ln_n = (r.ln() + q.constant.ln()
                - q.inv_error_exponent * scenario.epsilon.ln()
                - quantum.initial_state_fidelity.ln()
                - c.constant.ln())
                / (c.size_exponent - q.size_exponent);
            return Ok(Threshold::At(ln_n.exp().max(1.0)));
        }
    } else if base_gap > 0.0 {
        // Quantum law is the exponential one; any advantage sits before the
        // gap's minimum at N = (a_c − a_q) / ln(β_q/β_c).
        if exponent_gap >= 0.0 {
            return Ok(Threshold::Never);
        }
        let n_min = -exponent_gap / base_gap;
        if n_min <= 1.0 || gap(n_min)? > 0.0 {
            return Ok(Threshold::Never);
        }
        return bisect_ln(gap, 0.0, n_min.ln()).map(Threshold::At);
    }

    if scenario.quantum.mode == QuantumMode::SurfaceCode {
        return surface_code_threshold(quantum, year, scenario, gap);
    }

    // Bracket by doubling, then bisect.
    let mut lo = 0.0;
    let mut hi = std::f64::consts::LN_2;
    while gap(hi.exp())? > 0.0 {
        lo = hi;
        hi += std::f64::consts::LN_2;
        if hi > MAX_LN_SIZE {
            return Ok(Threshold::Never);
        }
    }
    bisect_ln(gap, lo, hi).map(Threshold::At)
}

/// First crossing when the code distance depends on N. The gap falls inside
/// each stretch of constant distance and jumps up where the distance steps,
/// so the stretches are walked in order and the first one whose right end
/// shows advantage is bisected.
fn surface_code_threshold(
    quantum: &AlgorithmSpec,
    year: f64,
    scenario: &Scenario,
    mut gap: impl FnMut(f64) -> Result<f64>,
) -> Result<Threshold> {
    let p = scenario.quantum.physical_error_trend.value(year);
    let distance = |ln_n: f64| {
        let t_count = cost::ln_t_count(quantum, ln_n.exp(), scenario).exp();
        hardware::required_code_distance(p, t_count, &scenario.quantum.surface_code)
    };
    let mut start = 0.0;
    while start <= MAX_LN_SIZE {
        let d = distance(start)?;
        // last ln N with distance d, to 1e-12
        let (mut same, mut step) = (start, std::f64::consts::LN_2);
        let mut other = loop {
            let probe = same + step;
            if probe > MAX_LN_SIZE {
                break None;
            }
            if distance(probe)? != d {
                break Some(probe);
            }
            same = probe;
            step *= 2.0;
        };
        if let Some(mut diff) = other {
            while diff - same > 1e-12 {
                let mid = 0.5 * (same + diff);
                if distance(mid)? == d {
                    same = mid;
                } else {
                    diff = mid;
                }
            }
            other = Some(diff);
        } else {
            same = MAX_LN_SIZE;
        }
        if gap(same.exp())? <= 0.0 {
            return bisect_ln(gap, start, same).map(Threshold::At);
        }
        match other {
            Some(next) => start = next,
            None => break,
        }
    }
    Ok(Threshold::Never)
}

/// Integer form of the threshold: the smallest N at which the quantum
/// runtime is no larger than the classical one.
pub fn min_advantageous_size(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    year: f64,
    scenario: &Scenario,
    threshold: Threshold,
) -> Result<Option<u64>> {
    let Threshold::At(x) = threshold else {
        return Ok(None);
    };
    let mut n = (x * (1.0 - 1e-9)).ceil().max(1.0) as u64;
    if n > MAX_PROBLEM_SIZE {
        return Ok(Some(n));
    }
    let wins = |n: u64| -> Result<bool> {
        Ok(runtime_gap(classical, quantum, n as f64, year, scenario)? <= TIE_LN_TOLERANCE)
    };
    while n > 1 && wins(n - 1)? {
        n -= 1;
    }
    for _ in 0..4 {
        if wins(n)? {
            return Ok(Some(n));
        }
        n += 1;
    }
    Ok(None)
}

/// Largest `n` in `[1, MAX_PROBLEM_SIZE]` with `fits(n)`, assuming `fits`
/// is monotone (true then false). Zero when nothing fits.
fn largest_fitting(mut fits: impl FnMut(u64) -> Result<bool>) -> Result<u64> {
    if !fits(1)? {
        return Ok(0);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    loop {
        if hi > MAX_PROBLEM_SIZE {
            hi = MAX_PROBLEM_SIZE + 1;
            break;
        }
        if !fits(hi)? {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    // fits(lo) holds, fits(hi) fails or hi is out of range
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub(crate) fn deadline_limited_size_at(
    quantum: &AlgorithmSpec,
    year: f64,
    deadline_s: f64,
    scenario: &Scenario,
) -> Result<u64> {
    quantum.expect_kind(AlgorithmKind::Quantum)?;
    let limit = deadline_s.ln() + TIE_LN_TOLERANCE;
    largest_fitting(|n| Ok(ln_quantum_seconds(quantum, n as f64, year, scenario)? <= limit))
}

pub fn deadline_limited_size(
    quantum: &AlgorithmSpec,
    year: f64,
    deadline_s: f64,
    scenario: &Scenario,
) -> Result<u64> {
    deadline_limited_size_at(quantum, year, deadline_s, scenario)
}

pub fn qubit_limited_size(quantum: &AlgorithmSpec, year: f64, scenario: &Scenario) -> Result<u64> {
    quantum.expect_kind(AlgorithmKind::Quantum)?;
    let law = quantum
        .qubit_law
        .as_ref()
        .expect("validated quantum specs carry a qubit law");
    largest_fitting(|n| {
        let n = n as f64;
        // the code distance, and so the qubit overhead, depends on this N's T-count
        let t_count = cost::ln_t_count(quantum, n, scenario).exp();
        let available = hardware::available_logical_qubits(&scenario.quantum, year, t_count)?;
        Ok(law.ln_at(n, 1.0) <= available.ln() + TIE_LN_TOLERANCE)
    })
}

pub fn feasibility_envelope(
    quantum: &AlgorithmSpec,
    year: f64,
    scenario: &Scenario,
) -> Result<FeasibilityEnvelope> {
    let qubit_limited_n = qubit_limited_size(quantum, year, scenario)?;
    let deadline_limited_n = deadline_limited_size(quantum, year, scenario.deadline_s, scenario)?;
    Ok(FeasibilityEnvelope {
        qubit_limited_n,
        deadline_limited_n,
        max_feasible_n: qubit_limited_n.min(deadline_limited_n),
    })
}

/// Region at a possibly fractional year; curve sampling uses this directly.
pub fn advantage_region_at(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    year: f64,
    scenario: &Scenario,
) -> Result<AdvantageRegion> {
    let threshold = qea_threshold(classical, quantum, year, scenario)?;
    let min_advantageous_n = min_advantageous_size(classical, quantum, year, scenario, threshold)?;
    let envelope = feasibility_envelope(quantum, year, scenario)?;
    let nonempty = matches!(min_advantageous_n, Some(n) if n <= envelope.max_feasible_n);
    Ok(AdvantageRegion {
        year,
        threshold,
        min_advantageous_n,
        envelope,
        nonempty,
    })
}

pub fn advantage_region(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    year: i32,
    scenario: &Scenario,
) -> Result<AdvantageRegion> {
    advantage_region_at(classical, quantum, f64::from(year), scenario)
}

pub fn first_advantage_year(
    classical: &AlgorithmSpec,
    quantum: &AlgorithmSpec,
    scenario: &Scenario,
) -> Result<DisruptionResult> {
    check_pair(classical, quantum)?;
    let mut binding = Binding::None;
    let mut finite_somewhere = false;
    for year in scenario.start_year..=scenario.horizon {
        let region = advantage_region(classical, quantum, year, scenario)?;
        if region.nonempty {
            return Ok(DisruptionResult {
                verdict: Verdict::Year(year),
                binding_constraint: binding,
            });
        }
        finite_somewhere |= region.threshold != Threshold::Never;
        binding = region.blocking_constraint();
    }
    let verdict = if finite_somewhere {
        Verdict::BeyondHorizon {
            horizon: scenario.horizon,
        }
    } else {
        Verdict::Never
    };
    Ok(DisruptionResult {
        verdict,
        binding_constraint: binding,
    })
}
