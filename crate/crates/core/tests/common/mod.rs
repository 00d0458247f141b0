//! Independent reference computations for the integration tests. These work
//! straight from scenario fields and cost-law parameters, without calling the
//! library's evaluation code.
#![allow(dead_code)]

use qea_core::catalog::{AlgorithmSpec, ComplexityModel};
use qea_core::hardware::{ExponentialTrend, QuantumMode, SurfaceCodeParams};
use qea_core::scenario::{default_scenario, AlgorithmOverride, Scenario};

pub const TIE: f64 = 1e-10;

pub fn ln_law(m: &ComplexityModel, n: f64, eps: f64) -> f64 {
    m.constant.ln() + m.size_exponent * n.ln() - m.inv_error_exponent * eps.ln()
        + n * m.exp_base.ln()
}

pub fn trend(t: &ExponentialTrend, year: f64) -> f64 {
    t.base_value * t.annual_factor.powf(year - f64::from(t.base_year))
}

/// Smallest odd distance by walking d = 1, 3, 5, ...
pub fn code_distance(p: f64, t_count: f64, sc: &SurfaceCodeParams) -> u32 {
    let mut d = 1u32;
    loop {
        let k = f64::from(d.div_ceil(2));
        let ln_fail = t_count.max(1.0).ln() + sc.prefactor.ln() + k * (p / sc.threshold_error).ln();
        if ln_fail <= sc.failure_budget.ln() + 1e-12 {
            return d;
        }
        d += 2;
    }
}

fn distance_at(s: &Scenario, year: f64, t_count: f64) -> u32 {
    code_distance(
        trend(&s.quantum.physical_error_trend, year),
        t_count,
        &s.quantum.surface_code,
    )
}

pub fn ln_quantum_throughput(s: &Scenario, year: f64, t_count: f64) -> f64 {
    let base = trend(&s.quantum.logical_tgate_trend, year).ln();
    match s.quantum.mode {
        QuantumMode::Simple => base,
        QuantumMode::SurfaceCode => {
            let y0 = f64::from(s.quantum.logical_tgate_trend.base_year);
            let d_ref = distance_at(s, y0, 1e10);
            let d = distance_at(s, year, t_count);
            base + f64::from(d_ref).ln() - f64::from(d).ln()
        }
    }
}

pub fn ln_quantum_seconds(q: &AlgorithmSpec, n: f64, year: f64, s: &Scenario) -> f64 {
    let ln_t = ln_law(&q.cost_law, n, s.epsilon);
    -q.initial_state_fidelity.ln() + ln_t - ln_quantum_throughput(s, year, ln_t.exp())
}

pub fn ln_classical_seconds(c: &AlgorithmSpec, n: f64, year: f64, s: &Scenario) -> f64 {
    ln_law(&c.cost_law, n, 1.0) - trend(&s.classical.flops_trend, year).ln()
}

pub fn gap(c: &AlgorithmSpec, q: &AlgorithmSpec, n: u64, year: f64, s: &Scenario) -> f64 {
    ln_quantum_seconds(q, n as f64, year, s) - ln_classical_seconds(c, n as f64, year, s)
}

pub fn quantum_wins(c: &AlgorithmSpec, q: &AlgorithmSpec, n: u64, year: f64, s: &Scenario) -> bool {
    gap(c, q, n, year, s) <= TIE
}

/// First integer in `1..=limit` with quantum advantage.
pub fn scan_threshold(
    c: &AlgorithmSpec,
    q: &AlgorithmSpec,
    year: f64,
    s: &Scenario,
    limit: u64,
) -> Option<u64> {
    (1..=limit).find(|&n| quantum_wins(c, q, n, year, s))
}

pub fn fits_deadline(q: &AlgorithmSpec, n: u64, year: f64, deadline: f64, s: &Scenario) -> bool {
    ln_quantum_seconds(q, n as f64, year, s) <= deadline.ln() + TIE
}

pub fn fits_qubits(q: &AlgorithmSpec, n: u64, year: f64, s: &Scenario) -> bool {
    let nf = n as f64;
    let ln_t = ln_law(&q.cost_law, nf, s.epsilon);
    let per_logical = match s.quantum.mode {
        QuantumMode::Simple => trend(&s.quantum.ratio_trend, year),
        QuantumMode::SurfaceCode => {
            let d = f64::from(distance_at(s, year, ln_t.exp()));
            2.0 * d * d
        }
    };
    let available = trend(&s.quantum.physical_qubit_trend, year) / per_logical;
    ln_law(q.qubit_law.as_ref().unwrap(), nf, 1.0) <= available.ln() + TIE
}

/// Largest `n` with `fits(n)` by walking up from 1, or `None` past `limit`.
pub fn scan_largest(limit: u64, fits: impl Fn(u64) -> bool) -> Option<u64> {
    if !fits(1) {
        return Some(0);
    }
    let mut n = 1;
    while n < limit {
        if !fits(n + 1) {
            return Some(n);
        }
        n += 1;
    }
    None
}

/// Five scenarios spanning the default, flat rates, tight budgets, the
/// surface-code platform and a classical-friendly outlook.
pub fn scenario_grid() -> Vec<(&'static str, Scenario)> {
    let base = default_scenario();

    let mut tight = base.clone();
    tight.epsilon = 1e-6;
    tight.deadline_s = 86_400.0;
    tight.overrides.insert(
        "qpe-n3".into(),
        AlgorithmOverride {
            fidelity: Some(0.5),
            ..Default::default()
        },
    );

    let mut surface = base.clone();
    surface.quantum.mode = QuantumMode::SurfaceCode;

    let mut slow = base.clone();
    slow.classical.flops_trend.annual_factor = 2.0;
    slow.quantum.logical_tgate_trend.annual_factor = 1.2;
    slow.quantum.physical_qubit_trend.annual_factor = 1.5;
    slow.quantum.ratio_trend.base_value = 1e4;

    vec![
        ("default", base),
        ("uncalibrated", Scenario::uncalibrated()),
        ("tight", tight),
        ("surface-code", surface),
        ("classical-friendly", slow),
    ]
}

pub fn pairs(s: &Scenario) -> Vec<(AlgorithmSpec, AlgorithmSpec)> {
    use qea_core::AlgorithmKind;
    let cat = s.catalog();
    let mut out = Vec::new();
    for c in cat.iter().filter(|a| a.kind == AlgorithmKind::Classical) {
        for q in cat.iter().filter(|a| a.kind == AlgorithmKind::Quantum) {
            out.push((c.clone(), q.clone()));
        }
    }
    out
}

pub const GRID_YEARS: [f64; 3] = [2025.0, 2035.0, 2045.0];

/// Linear scans are walked up to this size; beyond it only the boundary is
/// checked locally.
pub const SCAN_LIMIT: u64 = 50_000;

fn near_tie(g: f64) -> bool {
    g.abs() < 1e-8
}

/// Above this size neighbouring integers differ in the log gap by less than
/// f64 resolves next to the tie tolerance, so only the continuous crossing is
/// checked.
pub const INTEGER_LIMIT: f64 = 1e9;

fn continuous_gap(c: &AlgorithmSpec, q: &AlgorithmSpec, n: f64, year: f64, s: &Scenario) -> f64 {
    ln_quantum_seconds(q, n, year, s) - ln_classical_seconds(c, n, year, s)
}

/// First win in `k-2..=k+2` preceded by a loss.
fn local_boundary(
    c: &AlgorithmSpec,
    q: &AlgorithmSpec,
    k: u64,
    year: f64,
    s: &Scenario,
) -> Option<u64> {
    (k.saturating_sub(2).max(2)..=k + 2)
        .find(|&n| quantum_wins(c, q, n, year, s) && !quantum_wins(c, q, n - 1, year, s))
}

/// Compares `ceil(qea_threshold)` with a brute-force scan for one case.
pub fn check_threshold_case(
    c: &AlgorithmSpec,
    q: &AlgorithmSpec,
    year: f64,
    s: &Scenario,
) -> Result<(), String> {
    use qea_core::advantage::{qea_threshold, Threshold};
    let what = format!("{} vs {} in {year}", c.name, q.name);
    let t = qea_threshold(c, q, year, s).map_err(|e| format!("{what}: {e}"))?;
    match t {
        Threshold::At(x) if x > INTEGER_LIMIT => {
            if let Some(n) = scan_threshold(c, q, year, s, SCAN_LIMIT) {
                return Err(format!("{what}: threshold {x} but scan wins at {n}"));
            }
            let g = |n: f64| continuous_gap(c, q, n, year, s);
            if g(x).abs() <= 1e-9 && g(x * (1.0 - 1e-6)) > 0.0 {
                Ok(())
            } else {
                Err(format!("{what}: continuous gap does not cross at {x}"))
            }
        }
        Threshold::At(x) => {
            let k = x.ceil().max(1.0) as u64;
            let expected = if k <= SCAN_LIMIT {
                scan_threshold(c, q, year, s, k + 1)
            } else if let Some(n) = scan_threshold(c, q, year, s, SCAN_LIMIT) {
                return Err(format!("{what}: threshold {x} but scan wins at {n}"));
            } else {
                local_boundary(c, q, k, year, s)
            };
            match expected {
                Some(e) if e == k => Ok(()),
                // an exact tie at the boundary may round either way
                Some(e) if e.abs_diff(k) == 1 && near_tie(gap(c, q, e.min(k), year, s)) => Ok(()),
                _ => Err(format!(
                    "{what}: ceil threshold {k} (from {x}) but scan gives {expected:?}"
                )),
            }
        }
        Threshold::Never => {
            if let Some(n) = scan_threshold(c, q, year, s, SCAN_LIMIT) {
                return Err(format!("{what}: threshold never but scan wins at {n}"));
            }
            let mut n = SCAN_LIMIT;
            while n < 1 << 50 {
                if quantum_wins(c, q, n, year, s) {
                    return Err(format!("{what}: threshold never but {n} wins"));
                }
                n = n * 3 / 2;
            }
            Ok(())
        }
    }
}

/// Compares the library's largest size with a walk from 1, or with a local
/// boundary check when the size exceeds [`SCAN_LIMIT`].
pub fn check_largest(what: &str, got: u64, fits: impl Fn(u64) -> bool) -> Result<(), String> {
    match scan_largest(got.min(SCAN_LIMIT) + 1, &fits) {
        Some(n) if n == got => Ok(()),
        Some(n) => Err(format!("{what}: library {got}, scan {n}")),
        None if got >= SCAN_LIMIT && fits(got) && !fits(got + 1) => Ok(()),
        None => Err(format!("{what}: library {got} fails the boundary check")),
    }
}

/// Runs every oracle comparison over the scenario grid and returns the
/// number of cases checked.
pub fn check_oracle_grid() -> Result<usize, Vec<String>> {
    use qea_core::advantage::{deadline_limited_size, qubit_limited_size};
    use qea_core::AlgorithmKind;
    let mut failures = Vec::new();
    let mut cases = 0;
    for (label, s) in scenario_grid() {
        for &year in &GRID_YEARS {
            for (c, q) in pairs(&s) {
                cases += 1;
                if let Err(e) = check_threshold_case(&c, &q, year, &s) {
                    failures.push(format!("[{label}] {e}"));
                }
            }
            for q in s
                .catalog()
                .into_iter()
                .filter(|a| a.kind == AlgorithmKind::Quantum)
            {
                cases += 2;
                let what = format!("[{label}] {} in {year}", q.name);
                let d = deadline_limited_size(&q, year, s.deadline_s, &s).unwrap();
                if let Err(e) = check_largest(&format!("{what} deadline"), d, |n| {
                    fits_deadline(&q, n, year, s.deadline_s, &s)
                }) {
                    failures.push(e);
                }
                let k = qubit_limited_size(&q, year, &s).unwrap();
                if let Err(e) = check_largest(&format!("{what} qubits"), k, |n| {
                    fits_qubits(&q, n, year, &s)
                }) {
                    failures.push(e);
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(cases)
    } else {
        Err(failures)
    }
}
