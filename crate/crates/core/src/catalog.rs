//! Cost laws and qubit laws for the classical and quantum chemistry methods.
//!
//! Every law is a member of the family `c · N^a · ε^(−b) · β^N`. Polylog
//! factors are folded into the constant. Evaluation happens in the log
//! domain so that exponential laws stay finite far past `f64` range.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Logical qubits per basis function for every quantum entry.
pub const DEFAULT_QUBIT_CONSTANT: f64 = 10.0;

pub const DEFAULT_DMRG_BOND_DIMENSION: f64 = 1000.0;

/// Tag carried by entries that are listed but left out of disruption tables.
pub const CATALOG_ONLY: &str = "catalog-only";

/// A positive quantity stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Magnitude(f64);

impl Magnitude {
    pub fn from_ln(ln: f64) -> Self {
        Magnitude(ln)
    }

    pub fn from_value(value: f64) -> Self {
        Magnitude(value.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn log10(self) -> f64 {
        self.0 / std::f64::consts::LN_10
    }

    /// Plain `f64` value; `inf` once the magnitude leaves `f64` range.
    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if v.is_finite() && v > 0.0 {
            return write!(f, "{v:e}");
        }
        let l = self.log10();
        let exp = l.floor();
        let mantissa = 10f64.powf(l - exp);
        write!(f, "{mantissa}e{exp}")
    }
}

/// Cost law `constant · N^size_exponent · ε^(−inv_error_exponent) · exp_base^N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityModel {
    pub constant: f64,
    pub size_exponent: f64,
    pub inv_error_exponent: f64,
    pub exp_base: f64,
}

impl ComplexityModel {
    pub fn new(
        constant: f64,
        size_exponent: f64,
        inv_error_exponent: f64,
        exp_base: f64,
    ) -> Result<Self> {
        let m = ComplexityModel {
            constant,
            size_exponent,
            inv_error_exponent,
            exp_base,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn polynomial(constant: f64, size_exponent: f64, inv_error_exponent: f64) -> Self {
        ComplexityModel {
            constant,
            size_exponent,
            inv_error_exponent,
            exp_base: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.constant > 0.0 && self.constant.is_finite()) {
            return Err(Error::Domain(format!(
                "constant must be positive, got {}",
                self.constant
            )));
        }
        if !(self.exp_base >= 1.0 && self.exp_base.is_finite()) {
            return Err(Error::Domain(format!(
                "exponential base must be >= 1, got {}",
                self.exp_base
            )));
        }
        if !(self.size_exponent >= 0.0 && self.inv_error_exponent >= 0.0) {
            return Err(Error::Domain("exponents must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn is_polynomial(&self) -> bool {
        self.exp_base == 1.0
    }

    /// Natural log of the law at a continuous size. No domain checks.
    pub fn ln_at(&self, n: f64, epsilon: f64) -> f64 {
        let mut ln = self.constant.ln();
        if self.size_exponent != 0.0 {
            ln += self.size_exponent * n.ln();
        }
        if self.inv_error_exponent != 0.0 {
            ln -= self.inv_error_exponent * epsilon.ln();
        }
        if self.exp_base != 1.0 {
            ln += n * self.exp_base.ln();
        }
        ln
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.constant *= factor;
        self
    }
}

pub fn eval_complexity(model: &ComplexityModel, n: u64, epsilon: f64) -> Result<Magnitude> {
    if n < 1 {
        return Err(Error::Domain("problem size must be >= 1".into()));
    }
    check_epsilon(epsilon)?;
    Ok(Magnitude::from_ln(model.ln_at(n as f64, epsilon)))
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmKind {
    Classical,
    Quantum,
}

impl AlgorithmKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::Classical => "classical",
            AlgorithmKind::Quantum => "quantum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub name: String,
    pub kind: AlgorithmKind,
    /// Floating-point operations (classical) or logical T-gates (quantum).
    pub cost_law: ComplexityModel,
    /// Logical qubits versus N; quantum entries only.
    pub qubit_law: Option<ComplexityModel>,
    /// Overlap of the prepared state with the target eigenstate.
    pub initial_state_fidelity: f64,
    pub tags: Vec<String>,
}

impl AlgorithmSpec {
    pub fn classical(name: &str, cost_law: ComplexityModel) -> Self {
        AlgorithmSpec {
            name: name.to_string(),
            kind: AlgorithmKind::Classical,
            cost_law,
            qubit_law: None,
            initial_state_fidelity: 1.0,
            tags: Vec::new(),
        }
    }

    pub fn quantum(name: &str, cost_law: ComplexityModel) -> Self {
        AlgorithmSpec {
            name: name.to_string(),
            kind: AlgorithmKind::Quantum,
            cost_law,
            qubit_law: Some(ComplexityModel::polynomial(
                DEFAULT_QUBIT_CONSTANT,
                1.0,
                0.0,
            )),
            initial_state_fidelity: 1.0,
            tags: Vec::new(),
        }
    }

    fn tagged(mut self, tag: &str) -> Self {
        self.tags.push(tag.to_string());
        self
    }

    pub fn is_catalog_only(&self) -> bool {
        self.tags.iter().any(|t| t == CATALOG_ONLY)
    }

    pub(crate) fn expect_kind(&self, expected: AlgorithmKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                name: self.name.clone(),
                expected: expected.as_str(),
                actual: self.kind.as_str(),
            })
        }
    }

    /// Number of QPE repetitions, `1/F`; always 1 for classical methods.
    pub fn repetitions(&self) -> f64 {
        match self.kind {
            AlgorithmKind::Classical => 1.0,
            AlgorithmKind::Quantum => 1.0 / self.initial_state_fidelity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.cost_law.validate()?;
        match (self.kind, &self.qubit_law) {
            (AlgorithmKind::Quantum, None) => {
                return Err(Error::Domain(format!(
                    "quantum algorithm `{}` has no qubit law",
                    self.name
                )))
            }
            (AlgorithmKind::Classical, Some(_)) => {
                return Err(Error::Domain(format!(
                    "classical algorithm `{}` carries a qubit law",
                    self.name
                )))
            }
            (_, Some(q)) => q.validate()?,
            _ => {}
        }
        let f = self.initial_state_fidelity;
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::Domain(format!(
                "initial-state fidelity of `{}` must lie in (0, 1], got {f}",
                self.name
            )));
        }
        Ok(())
    }
}

/// Parameters that turn the two-variable catalog laws into one-variable ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CatalogParams {
    /// Bond dimension M in DMRG's `k³M³` law.
    pub dmrg_bond_dimension: f64,
    /// Electrons per spatial orbital, `N_e = f·N`, for first-quantized QPE.
    pub electron_filling: f64,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            dmrg_bond_dimension: DEFAULT_DMRG_BOND_DIMENSION,
            electron_filling: 1.0,
        }
    }
}

pub const CLASSICAL_TABLE_METHODS: [&str; 6] = ["DFT", "HF", "MP2", "CCSD", "CCSD(T)", "FCI"];
pub const QUANTUM_TABLE_METHODS: [&str; 2] = ["qpe-n3", "qpe-n2"];

const NAMES: [&str; 12] = [
    "DFT",
    "HF",
    "MP2",
    "CCSD",
    "CCSD(T)",
    "FCI",
    "DMRG",
    "VMC",
    "qpe-n5",
    "qpe-n3",
    "qpe-n2",
    "qpe-first-quant",
];

/// Resolves user spellings to catalog names. `CCSDT` is accepted for
/// `CCSD(T)` and matching ignores ASCII case.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("CCSDT") {
        return Some("CCSD(T)");
    }
    NAMES.iter().copied().find(|n| n.eq_ignore_ascii_case(name))
}

pub fn builtin_catalog() -> Vec<AlgorithmSpec> {
    catalog_with(&CatalogParams::default())
}

pub fn catalog_with(params: &CatalogParams) -> Vec<AlgorithmSpec> {
    let poly = |a: f64| ComplexityModel::polynomial(1.0, a, 0.0);
    let qpe = |a: f64| ComplexityModel::polynomial(1.0, a, 1.0);
    let m = params.dmrg_bond_dimension;
    let f = params.electron_filling;
    vec![
        AlgorithmSpec::classical("DFT", poly(3.0)),
        AlgorithmSpec::classical("HF", poly(4.0)),
        AlgorithmSpec::classical("MP2", poly(5.0)),
        AlgorithmSpec::classical("CCSD", poly(6.0)),
        AlgorithmSpec::classical("CCSD(T)", poly(7.0)),
        AlgorithmSpec::classical(
            "FCI",
            ComplexityModel {
                constant: 1.0,
                size_exponent: 0.0,
                inv_error_exponent: 0.0,
                exp_base: 4.0,
            },
        ),
        // k³M³ with k = N active orbitals and a fixed bond dimension.
        AlgorithmSpec::classical("DMRG", ComplexityModel::polynomial(m.powi(3), 3.0, 0.0))
            .tagged(CATALOG_ONLY),
        AlgorithmSpec::classical("VMC", poly(3.5)).tagged(CATALOG_ONLY),
        AlgorithmSpec::quantum("qpe-n5", qpe(5.0)),
        AlgorithmSpec::quantum("qpe-n3", qpe(3.0)),
        AlgorithmSpec::quantum("qpe-n2", qpe(2.0)),
        // N_e^{8/3}·N^{1/3} with N_e = f·N.
        AlgorithmSpec::quantum(
            "qpe-first-quant",
            ComplexityModel::polynomial(f.powf(8.0 / 3.0), 3.0, 1.0),
        )
        .tagged(CATALOG_ONLY),
    ]
}

pub fn lookup<'a>(catalog: &'a [AlgorithmSpec], name: &str) -> Result<&'a AlgorithmSpec> {
    let canonical = canonical_name(name).ok_or_else(|| Error::UnknownAlgorithm(name.into()))?;
    catalog
        .iter()
        .find(|a| a.name == canonical)
        .ok_or_else(|| Error::UnknownAlgorithm(name.into()))
}

/// Exact half-filled determinant count `C(2n, n)`.
pub fn fci_dimension(n_spatial: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 1..=n_spatial {
        // acc = C(n + i - 1, i - 1) here, so the division is exact
        acc *= n_spatial + i;
        acc /= i;
    }
    acc
}
