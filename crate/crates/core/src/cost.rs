//! Wall-clock runtimes at equal dollar spend, plus the runtime and T-gate estimators.
//!
//! Both sides are priced at a spend of one dollar per second, so a runtime
//! is simply work divided by per-dollar throughput.

use crate::catalog::{check_epsilon, AlgorithmKind, AlgorithmSpec};
use crate::error::{Error, Result};
use crate::hardware::{self, REFERENCE_T_COUNT};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeQuote {
    pub seconds: f64,
    /// Flops for classical methods, logical T-gates for quantum ones.
    pub resource_count: f64,
    pub logical_qubits: Option<f64>,
    pub repetitions: f64,
}

fn check_size(n: u64) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::Domain("problem size must be >= 1".into()))
    }
}

pub(crate) fn ln_classical_work(alg: &AlgorithmSpec, n: f64) -> f64 {
    alg.cost_law.ln_at(n, 1.0)
}

pub(crate) fn ln_classical_seconds(alg: &AlgorithmSpec, n: f64, year: f64, s: &Scenario) -> f64 {
    ln_classical_work(alg, n) - s.classical.flops_trend.ln_value(year)
}

pub(crate) fn ln_t_count(alg: &AlgorithmSpec, n: f64, s: &Scenario) -> f64 {
    alg.cost_law.ln_at(n, s.epsilon)
}

pub(crate) fn ln_quantum_seconds(
    alg: &AlgorithmSpec,
    n: f64,
    year: f64,
    s: &Scenario,
) -> Result<f64> {
    let ln_t = ln_t_count(alg, n, s);
    let throughput = hardware::quantum_logical_throughput(&s.quantum, year, ln_t.exp())?;
    Ok(alg.repetitions().ln() + ln_t - throughput.ln())
}

pub fn classical_runtime(
    alg: &AlgorithmSpec,
    n: u64,
    year: f64,
    scenario: &Scenario,
) -> Result<RuntimeQuote> {
    alg.expect_kind(AlgorithmKind::Classical)?;
    check_size(n)?;
    let work = ln_classical_work(alg, n as f64).exp();
    let seconds = work / hardware::classical_throughput(&scenario.classical, year);
    Ok(RuntimeQuote {
        seconds,
        resource_count: work,
        logical_qubits: None,
        repetitions: 1.0,
    })
}

pub fn quantum_runtime(
    alg: &AlgorithmSpec,
    n: u64,
    year: f64,
    scenario: &Scenario,
) -> Result<RuntimeQuote> {
    alg.expect_kind(AlgorithmKind::Quantum)?;
    check_size(n)?;
    check_epsilon(scenario.epsilon)?;
    let t_count = ln_t_count(alg, n as f64, scenario).exp();
    let repetitions = alg.repetitions();
    let throughput = hardware::quantum_logical_throughput(&scenario.quantum, year, t_count)?;
    let qubits = alg.qubit_law.as_ref().map(|q| q.ln_at(n as f64, 1.0).exp());
    Ok(RuntimeQuote {
        seconds: repetitions * t_count / throughput,
        resource_count: t_count,
        logical_qubits: qubits,
        repetitions,
    })
}

/// `runtime · peak_flops / n^exponent`: the constant that turns an
/// asymptotic flop law into a measured runtime.
pub fn flop_adjusted_constant(runtime_s: f64, peak_flops: f64, n: u64, exponent: f64) -> f64 {
    runtime_s * peak_flops / (n as f64).powf(exponent)
}

/// Inverse of [`flop_adjusted_constant`].
pub fn runtime_from_constant(constant: f64, peak_flops: f64, n: u64, exponent: f64) -> f64 {
    constant * (n as f64).powf(exponent) / peak_flops
}

pub fn naive_t_gate_estimate(n: u64, exponent: f64, epsilon: f64) -> f64 {
    (n as f64).powf(exponent) / epsilon
}

/// Classical flops per logical T-gate bought by the same spend.
pub fn overhead_ratio(scenario: &Scenario, year: f64) -> Result<f64> {
    let quantum = hardware::quantum_logical_throughput(&scenario.quantum, year, REFERENCE_T_COUNT)?;
    Ok(hardware::classical_throughput(&scenario.classical, year) / quantum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{default_scenario, AlgorithmOverride};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn classical_examples() {
        let s = default_scenario();
        let ccsd = s.algorithm("CCSD").unwrap();
        let q = classical_runtime(&ccsd, 10, 2025.0, &s).unwrap();
        assert_relative_eq!(q.resource_count, 1e6, max_relative = 1e-12);
        assert_relative_eq!(q.seconds, 1e-12, max_relative = 1e-12);
        assert_eq!(q.repetitions, 1.0);
        assert_eq!(q.logical_qubits, None);

        let fci = s.algorithm("FCI").unwrap();
        let q = classical_runtime(&fci, 35, 2025.0, &s).unwrap();
        assert_relative_eq!(q.resource_count, 4f64.powi(35), max_relative = 1e-12);
        assert_relative_eq!(q.seconds, 4f64.powi(35) / 1e18, max_relative = 1e-12);
        assert!((q.seconds - 1.18e3).abs() < 0.01e3);

        for y in [2025.0, 2031.0, 2049.0] {
            let a = classical_runtime(&ccsd, 50, y, &s).unwrap().seconds;
            let b = classical_runtime(&ccsd, 50, y + 1.0, &s).unwrap().seconds;
            assert_relative_eq!(b / a, 1.0 / 1.4, max_relative = 1e-12);
        }
    }

    #[test]
    fn quantum_examples() {
        let mut s = default_scenario();
        let qpe = s.algorithm("qpe-n3").unwrap();
        let q = quantum_runtime(&qpe, 100, 2025.0, &s).unwrap();
        assert_relative_eq!(q.resource_count, 1e9, max_relative = 1e-12);
        assert_relative_eq!(q.seconds, 1e4, max_relative = 1e-12);
        assert_relative_eq!(q.logical_qubits.unwrap(), 1000.0, max_relative = 1e-12);

        s.overrides.insert(
            "qpe-n3".into(),
            AlgorithmOverride {
                fidelity: Some(0.5),
                ..Default::default()
            },
        );
        let half = s.algorithm("qpe-n3").unwrap();
        let q = quantum_runtime(&half, 100, 2025.0, &s).unwrap();
        assert_eq!(q.repetitions, 2.0);
        assert_relative_eq!(q.seconds, 2e4, max_relative = 1e-12);

        let n5 = s.algorithm("qpe-n5").unwrap();
        let q = quantum_runtime(&n5, 192, 2025.0, &s).unwrap();
        assert!((q.resource_count / 2.6e14 - 1.0).abs() < 0.01);
    }

    #[test]
    fn kind_mismatch() {
        let s = default_scenario();
        let ccsd = s.algorithm("CCSD").unwrap();
        let qpe = s.algorithm("qpe-n3").unwrap();
        assert!(matches!(
            quantum_runtime(&ccsd, 10, 2025.0, &s),
            Err(Error::KindMismatch { .. })
        ));
        assert!(classical_runtime(&qpe, 10, 2025.0, &s).is_err());
        assert!(classical_runtime(&ccsd, 0, 2025.0, &s).is_err());
    }

    #[test]
    fn estimator_examples() {
        let c = flop_adjusted_constant(960.0, 9.8e13, 966, 6.0);
        assert!((c - 0.12).abs() <= 0.01, "{c}");
        let c = flop_adjusted_constant(61200.0, 8.4e12, 315, 7.0);
        assert!((c - 1.67).abs() <= 0.02, "{c}");
        assert_eq!(flop_adjusted_constant(1.0, 1.0, 1, 6.0), 1.0);

        assert!((naive_t_gate_estimate(192, 5.0, 1e-3) / 2.6e14 - 1.0).abs() < 0.02);
        assert_eq!(naive_t_gate_estimate(1, 4.0, 1.0), 1.0);
        assert_relative_eq!(
            naive_t_gate_estimate(54, 3.0, 1e-3),
            157_464_000.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn overhead_examples() {
        let s = default_scenario();
        assert_eq!(overhead_ratio(&s, 2025.0).unwrap(), 1e13);

        let mut equal = default_scenario();
        equal.quantum.logical_tgate_trend.annual_factor = 1.4;
        for y in 2025..=2050 {
            assert_relative_eq!(
                overhead_ratio(&equal, f64::from(y)).unwrap(),
                1e13,
                max_relative = 1e-12
            );
        }

        let mut fast = default_scenario();
        fast.quantum.logical_tgate_trend.annual_factor = 2.0;
        let r: Vec<f64> = (2025..=2050)
            .map(|y| overhead_ratio(&fast, f64::from(y)).unwrap())
            .collect();
        assert!(r.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn runtime_ratio_depends_only_on_overhead() {
        let s = default_scenario();
        let mut scaled = s.clone();
        scaled.classical.flops_trend = scaled.classical.flops_trend.scaled(7.0);
        scaled.quantum.logical_tgate_trend = scaled.quantum.logical_tgate_trend.scaled(7.0);
        for (c, q) in [("CCSD", "qpe-n3"), ("FCI", "qpe-n2"), ("HF", "qpe-n5")] {
            let (c, q) = (s.algorithm(c).unwrap(), s.algorithm(q).unwrap());
            for n in [3u64, 40, 900] {
                let ratio = |s: &Scenario| {
                    quantum_runtime(&q, n, 2031.0, s).unwrap().seconds
                        / classical_runtime(&c, n, 2031.0, s).unwrap().seconds
                };
                assert_relative_eq!(ratio(&s), ratio(&scaled), max_relative = 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn constant_round_trip(t in 1e-3f64..1e7, p in 1e9f64..1e18, n in 1u64..5000, e in 1.0f64..8.0) {
            let c = flop_adjusted_constant(t, p, n, e);
            let back = runtime_from_constant(c, p, n, e);
            prop_assert!((back / t - 1.0).abs() < 1e-12);
        }

        #[test]
        fn quantum_seconds_linear_in_constant_and_inverse_fidelity(
            k in 1e-3f64..1e3,
            f in 0.01f64..=1.0,
            n in 1u64..10_000,
        ) {
            let s = default_scenario();
            let base = quantum_runtime(&s.algorithm("qpe-n3").unwrap(), n, 2030.0, &s).unwrap().seconds;
            let mut alg = s.algorithm("qpe-n3").unwrap();
            alg.cost_law.constant *= k;
            alg.initial_state_fidelity = f;
            let got = quantum_runtime(&alg, n, 2030.0, &s).unwrap().seconds;
            prop_assert!((got / (base * k / f) - 1.0).abs() < 1e-12);
        }
    }
}
