//! The full parameter set for one model run, its file format, the shipped
//! default and the robustness variations.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{self, AlgorithmKind, AlgorithmSpec, CatalogParams};
use crate::error::{Error, Result};
use crate::hardware::{
    ClassicalPlatform, ExponentialTrend, QuantumMode, QuantumPlatform, SurfaceCodeParams,
};

pub const DEFAULT_EPSILON: f64 = 1e-3;
/// One month, taken as 30 days.
pub const DEFAULT_DEADLINE_S: f64 = 2_592_000.0;
pub const DEFAULT_START_YEAR: i32 = 2025;
pub const DEFAULT_HORIZON: i32 = 2050;

/// Annual growth of logical T-gates per dollar-second.
///
/// Output of `qea calibrate --anchor FCI:qpe-n3:2032 --anchor CCSDT:qpe-n3:2036
/// --free quantum.physical_qubit_trend.annual_factor
/// --free quantum.logical_tgate_trend.annual_factor` run on the uncalibrated base.
pub const CALIBRATED_LOGICAL_TGATE_FACTOR: f64 = 3.72515869140625;

/// Annual growth of the physical qubit roadmap; same calibration run.
pub const CALIBRATED_PHYSICAL_QUBIT_FACTOR: f64 = 2.06951904296875;

/// Per-algorithm replacements for catalog values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubit_constant: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub epsilon: f64,
    pub deadline_s: f64,
    pub start_year: i32,
    pub horizon: i32,
    pub classical: ClassicalPlatform,
    pub quantum: QuantumPlatform,
    pub catalog: CatalogParams,
    pub overrides: BTreeMap<String, AlgorithmOverride>,
}

impl Default for QuantumPlatform {
    fn default() -> Self {
        QuantumPlatform {
            mode: QuantumMode::Simple,
            // 10⁷ physical gate operations per $1/s, i.e. 10⁵ logical
            logical_tgate_trend: ExponentialTrend::new(2025, 1e5, CALIBRATED_LOGICAL_TGATE_FACTOR),
            physical_qubit_trend: ExponentialTrend::new(
                2024,
                1.1e3,
                CALIBRATED_PHYSICAL_QUBIT_FACTOR,
            ),
            ratio_trend: ExponentialTrend::new(2025, 1e3, 1.0),
            // surface-code mode only
            physical_error_trend: ExponentialTrend::new(2025, 1e-3, 0.9),
            surface_code: SurfaceCodeParams::default(),
        }
    }
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            epsilon: DEFAULT_EPSILON,
            deadline_s: DEFAULT_DEADLINE_S,
            start_year: DEFAULT_START_YEAR,
            horizon: DEFAULT_HORIZON,
            classical: ClassicalPlatform::default(),
            quantum: QuantumPlatform::default(),
            catalog: CatalogParams::default(),
            overrides: BTreeMap::new(),
        }
    }
}

pub fn default_scenario() -> Scenario {
    Scenario::default()
}

impl Scenario {
    /// The default scenario with both calibrated growth rates reset to 1.
    pub fn uncalibrated() -> Scenario {
        let mut s = Scenario::default();
        s.quantum.logical_tgate_trend.annual_factor = 1.0;
        s.quantum.physical_qubit_trend.annual_factor = 1.0;
        s
    }

    pub fn from_json_str(text: &str) -> Result<Scenario> {
        let raw: Scenario =
            serde_json::from_str(text).map_err(|e| Error::InvalidScenario(e.to_string()))?;
        let s = raw.normalized()?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidScenario(format!("{}: {e}", path.display())))?;
        Scenario::from_json_str(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// SHA-256 of the compact JSON encoding, hex encoded.
    pub fn fingerprint(&self) -> String {
        let compact = serde_json::to_string(self).expect("scenario serializes");
        hex::encode(Sha256::digest(compact.as_bytes()))
    }

    fn normalized(mut self) -> Result<Scenario> {
        let mut overrides = BTreeMap::new();
        for (name, o) in std::mem::take(&mut self.overrides) {
            let canonical = catalog::canonical_name(&name).ok_or_else(|| {
                Error::InvalidScenario(format!("override for unknown algorithm `{name}`"))
            })?;
            if overrides.insert(canonical.to_string(), o).is_some() {
                return Err(Error::InvalidScenario(format!(
                    "duplicate override for `{canonical}`"
                )));
            }
        }
        self.overrides = overrides;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidScenario(m));
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return bad(format!("epsilon must lie in (0, 1], got {}", self.epsilon));
        }
        if !(self.deadline_s > 0.0 && self.deadline_s.is_finite()) {
            return bad(format!(
                "deadline_s must be positive, got {}",
                self.deadline_s
            ));
        }
        if self.horizon < self.start_year {
            return bad(format!(
                "horizon {} precedes start_year {}",
                self.horizon, self.start_year
            ));
        }
        self.classical
            .flops_trend
            .validate("classical.flops_trend")?;
        self.quantum.validate()?;
        if !(self.catalog.dmrg_bond_dimension >= 1.0 && self.catalog.electron_filling > 0.0) {
            return bad("catalog: bond dimension must be >= 1 and filling positive".into());
        }
        for (name, o) in &self.overrides {
            for (field, v) in [
                ("constant", o.constant),
                ("exponent", o.exponent),
                ("fidelity", o.fidelity),
                ("qubit_constant", o.qubit_constant),
            ] {
                if let Some(v) = v {
                    if !(v > 0.0 && v.is_finite()) {
                        return bad(format!("overrides.{name}.{field} must be positive"));
                    }
                }
            }
            self.algorithm(name)
                .and_then(|a| a.validate())
                .map_err(|e| Error::InvalidScenario(format!("overrides.{name}: {e}")))?;
        }
        Ok(())
    }

    pub fn catalog(&self) -> Vec<AlgorithmSpec> {
        catalog::catalog_with(&self.catalog)
            .into_iter()
            .map(|a| self.apply_override(a))
            .collect()
    }

    /// Catalog entry with this scenario's overrides applied.
    pub fn algorithm(&self, name: &str) -> Result<AlgorithmSpec> {
        let base = catalog::catalog_with(&self.catalog);
        let spec = catalog::lookup(&base, name)?.clone();
        Ok(self.apply_override(spec))
    }

    fn apply_override(&self, mut spec: AlgorithmSpec) -> AlgorithmSpec {
        if let Some(o) = self.overrides.get(&spec.name) {
            if let Some(c) = o.constant {
                spec.cost_law.constant = c;
            }
            if let Some(a) = o.exponent {
                spec.cost_law.size_exponent = a;
            }
            if spec.kind == AlgorithmKind::Quantum {
                if let Some(f) = o.fidelity {
                    spec.initial_state_fidelity = f;
                }
                if let (Some(q), Some(law)) = (o.qubit_constant, spec.qubit_law.as_mut()) {
                    law.constant = q;
                }
            }
        }
        spec
    }
}

/// Constant-factor perturbation of a scenario, as in the robustness tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Variation {
    pub name: String,
    pub quantum_time: f64,
    pub classical_time: f64,
    pub logical_qubits: f64,
}

impl Variation {
    pub fn identity(name: &str) -> Self {
        Variation {
            name: name.to_string(),
            quantum_time: 1.0,
            classical_time: 1.0,
            logical_qubits: 1.0,
        }
    }

    pub fn quantum_time(factor: f64) -> Self {
        Variation {
            quantum_time: factor,
            ..Variation::identity(&format!("x{factor} quantum-time"))
        }
    }

    pub fn classical_time(factor: f64) -> Self {
        Variation {
            classical_time: factor,
            ..Variation::identity(&format!("x{factor} classical-time"))
        }
    }

    pub fn logical_qubits(factor: f64) -> Self {
        Variation {
            logical_qubits: factor,
            ..Variation::identity(&format!("x{factor} logical"))
        }
    }

    /// The three standard robustness perturbations.
    pub fn standard_set() -> Vec<Variation> {
        vec![
            Variation::logical_qubits(0.1),
            Variation::quantum_time(10.0),
            Variation::classical_time(1e-3),
        ]
    }

    /// Parses `key=factor` with key one of `logical`, `quantum_time`, `classical_time`.
    pub fn parse(spec: &str) -> Result<Variation> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("variation `{spec}` is not key=factor")))?;
        let factor: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("variation `{spec}`: bad factor")))?;
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::Parse(format!(
                "variation `{spec}`: factor must be positive"
            )));
        }
        match key.trim() {
            "logical" | "logical_qubits" => Ok(Variation::logical_qubits(factor)),
            "quantum_time" => Ok(Variation::quantum_time(factor)),
            "classical_time" => Ok(Variation::classical_time(factor)),
            other => Err(Error::Parse(format!("unknown variation key `{other}`"))),
        }
    }
}

/// Multiplies cost and qubit constants of every catalog entry. Multipliers
/// equal to 1 leave the scenario untouched.
pub fn apply_variation(s: &Scenario, v: &Variation) -> Scenario {
    let mut out = s.clone();
    for alg in s.catalog() {
        let (time, qubits) = match alg.kind {
            AlgorithmKind::Classical => (v.classical_time, 1.0),
            AlgorithmKind::Quantum => (v.quantum_time, v.logical_qubits),
        };
        if time == 1.0 && qubits == 1.0 {
            continue;
        }
        let entry = out.overrides.entry(alg.name.clone()).or_default();
        if time != 1.0 {
            entry.constant = Some(alg.cost_law.constant * time);
        }
        if qubits != 1.0 {
            let q = alg
                .qubit_law
                .expect("quantum entries carry a qubit law")
                .constant;
            entry.qubit_constant = Some(q * qubits);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn default_values() {
        let s = default_scenario();
        assert_eq!(s.epsilon, 1e-3);
        assert_eq!(s.deadline_s, 2_592_000.0);
        assert_eq!((s.start_year, s.horizon), (2025, 2050));
        let q = s.algorithm("qpe-n3").unwrap();
        assert_eq!(q.qubit_law.unwrap().constant, 10.0);
        assert_eq!(q.initial_state_fidelity, 1.0);
        s.validate().unwrap();
    }

    #[test]
    fn variation_examples() {
        let s = default_scenario();
        let q10 = apply_variation(&s, &Variation::quantum_time(10.0));
        assert_eq!(q10.algorithm("qpe-n3").unwrap().cost_law.constant, 10.0);
        assert_eq!(q10.algorithm("CCSD").unwrap().cost_law.constant, 1.0);
        let c = apply_variation(&s, &Variation::classical_time(1e-3));
        for name in ["DFT", "HF", "MP2", "CCSD", "CCSD(T)", "FCI"] {
            assert_eq!(c.algorithm(name).unwrap().cost_law.constant, 1e-3);
        }
        assert_eq!(c.algorithm("DMRG").unwrap().cost_law.constant, 1e9 * 1e-3);
        let l = apply_variation(&s, &Variation::logical_qubits(0.1));
        assert_eq!(
            l.algorithm("qpe-n2").unwrap().qubit_law.unwrap().constant,
            1.0
        );
        assert_eq!(apply_variation(&s, &Variation::identity("none")), s);
        // the input is never modified
        assert!(s.overrides.is_empty());
    }

    #[test]
    fn overrides_resolve_aliases_and_reject_unknown() {
        let s = Scenario::from_json_str(
            r#"{"overrides": {"CCSDT": {"constant": 1.67}, "qpe-n3": {"fidelity": 0.5}}}"#,
        )
        .unwrap();
        assert_eq!(s.algorithm("CCSD(T)").unwrap().cost_law.constant, 1.67);
        assert_eq!(s.algorithm("qpe-n3").unwrap().repetitions(), 2.0);
        assert!(Scenario::from_json_str(r#"{"overrides": {"CISD": {}}}"#).is_err());
        assert!(
            Scenario::from_json_str(r#"{"overrides": {"qpe-n3": {"fidelity": 2.0}}}"#).is_err()
        );
        assert!(Scenario::from_json_str(r#"{"overrides": {"HF": {"constant": -1}}}"#).is_err());
    }

    #[test]
    fn strict_keys() {
        assert!(Scenario::from_json_str(r#"{"epsilon": 0.01, "colour": 1}"#).is_err());
        assert!(Scenario::from_json_str(r#"{"quantum": {"speed": 1}}"#).is_err());
        assert!(Scenario::from_json_str(
            r#"{"quantum": {"surface_code": {"A": 0.1, "p_th": 0.01, "cycle_time_s": 1e-6, "cycles_per_t": 10, "failure_budget": 0.01, "d": 3}}}"#
        )
        .is_err());
        let s =
            Scenario::from_json_str(r#"{"epsilon": 0.01, "quantum": {"mode": "surface-code"}}"#)
                .unwrap();
        assert_eq!(s.epsilon, 0.01);
        assert_eq!(s.quantum.mode, QuantumMode::SurfaceCode);
    }

    #[test]
    fn invalid_values_rejected() {
        for bad in [
            r#"{"epsilon": 0}"#,
            r#"{"epsilon": 2}"#,
            r#"{"deadline_s": -1}"#,
            r#"{"start_year": 2030, "horizon": 2029}"#,
            r#"{"classical": {"flops_trend": {"base_year": 2025, "base_value": 0, "annual_factor": 1.4}}}"#,
            r#"{"quantum": {"surface_code": {"A": 0.1, "p_th": 1.5, "cycle_time_s": 1e-6, "cycles_per_t": 10, "failure_budget": 0.01}}}"#,
        ] {
            assert!(
                matches!(Scenario::from_json_str(bad), Err(Error::InvalidScenario(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn variation_parse() {
        assert_eq!(Variation::parse("logical=0.1").unwrap().logical_qubits, 0.1);
        assert_eq!(
            Variation::parse("quantum_time=10").unwrap().quantum_time,
            10.0
        );
        assert_eq!(
            Variation::parse("classical_time=0.001")
                .unwrap()
                .classical_time,
            1e-3
        );
        assert!(Variation::parse("memory=2").is_err());
        assert!(Variation::parse("logical").is_err());
        assert!(Variation::parse("logical=-2").is_err());
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = default_scenario();
        let mut b = a.clone();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.epsilon = 1e-4;
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }

    fn arb_scenario() -> impl Strategy<Value = Scenario> {
        (
            1e-9f64..=1.0,
            1.0f64..1e9,
            0.5f64..4.0,
            0.5f64..4.0,
            1e-6f64..1e6,
            prop::option::of(0.01f64..=1.0),
        )
            .prop_map(|(eps, deadline, rq, rp, c, fid)| {
                let mut s = default_scenario();
                s.epsilon = eps;
                s.deadline_s = deadline;
                s.quantum.logical_tgate_trend.annual_factor = rq;
                s.quantum.physical_qubit_trend.annual_factor = rp;
                s.overrides.insert(
                    "qpe-n3".into(),
                    AlgorithmOverride {
                        constant: Some(c),
                        fidelity: fid,
                        ..Default::default()
                    },
                );
                s
            })
    }

    proptest! {
        #[test]
        fn file_round_trip_is_bit_exact(s in arb_scenario()) {
            let back = Scenario::from_json_str(&s.to_json_pretty()).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.fingerprint(), s.fingerprint());
        }

        #[test]
        fn variations_compose(a in 1e-4f64..1e4, b in 1e-4f64..1e4) {
            let s = default_scenario();
            let mk = |f: f64| Variation { quantum_time: f, classical_time: f, logical_qubits: f, ..Variation::identity("v") };
            let twice = apply_variation(&apply_variation(&s, &mk(a)), &mk(b));
            let once = apply_variation(&s, &mk(a * b));
            for alg in once.catalog() {
                let other = twice.algorithm(&alg.name).unwrap();
                assert_relative_eq!(alg.cost_law.constant, other.cost_law.constant, max_relative = 1e-14);
                if let (Some(x), Some(y)) = (alg.qubit_law, other.qubit_law) {
                    assert_relative_eq!(x.constant, y.constant, max_relative = 1e-14);
                }
            }
        }
    }
}
