//! Orbital counting, so basis-function sizes can be read as atom counts.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisHeuristic {
    pub name: String,
    pub per_element_orbitals: BTreeMap<String, u64>,
}

impl BasisHeuristic {
    pub fn new(name: &str, table: &[(&str, u64)]) -> Result<Self> {
        if let Some((el, _)) = table.iter().find(|(_, n)| *n == 0) {
            return Err(Error::Domain(format!("element `{el}` has zero orbitals")));
        }
        Ok(BasisHeuristic {
            name: name.to_string(),
            per_element_orbitals: table.iter().map(|(e, n)| (e.to_string(), *n)).collect(),
        })
    }

    /// 6-31G on C and S, LANL2DZ on Fe and Mo. Carries no hydrogen entry.
    pub fn femoco_mixed() -> Self {
        BasisHeuristic::new(
            "femoco-mixed",
            &[("Fe", 22), ("Mo", 22), ("S", 13), ("C", 9)],
        )
        .expect("static table")
    }

    pub fn hydrocarbon_631g() -> Self {
        BasisHeuristic::new("hydrocarbon-631g", &[("C", 9), ("H", 2)]).expect("static table")
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "femoco-mixed" => Ok(Self::femoco_mixed()),
            "hydrocarbon-631g" => Ok(Self::hydrocarbon_631g()),
            other => Err(Error::UnknownHeuristic(other.to_string())),
        }
    }
}

/// Atom counts per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoleculeSpec {
    pub composition: BTreeMap<String, u64>,
}

impl MoleculeSpec {
    pub fn new(parts: &[(&str, u64)]) -> Result<Self> {
        let mut composition = BTreeMap::new();
        for (el, count) in parts {
            if *count == 0 {
                return Err(Error::Domain(format!("element `{el}` has zero atoms")));
            }
            *composition.entry(el.to_string()).or_insert(0) += count;
        }
        if composition.is_empty() {
            return Err(Error::Domain("molecule is empty".into()));
        }
        Ok(MoleculeSpec { composition })
    }

    pub fn atom_count(&self) -> u64 {
        self.composition.values().sum()
    }

    /// Union of two compositions.
    pub fn combined(&self, other: &MoleculeSpec) -> MoleculeSpec {
        let mut composition = self.composition.clone();
        for (el, n) in &other.composition {
            *composition.entry(el.clone()).or_insert(0) += n;
        }
        MoleculeSpec { composition }
    }
}

/// `El:count` pairs separated by commas, e.g. `Fe:7,Mo:1,S:9,C:1`.
impl FromStr for MoleculeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (el, count) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("`{item}` is not El:count")))?;
            let el = el.trim();
            if el.is_empty() || !el.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(Error::Parse(format!("bad element symbol `{el}`")));
            }
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad atom count in `{item}`")))?;
            parts.push((el, count));
        }
        MoleculeSpec::new(&parts)
    }
}

pub fn orbital_count(m: &MoleculeSpec, h: &BasisHeuristic) -> Result<u64> {
    m.composition.iter().try_fold(0u64, |acc, (el, atoms)| {
        let per = h
            .per_element_orbitals
            .get(el)
            .ok_or_else(|| Error::MissingElement(el.clone()))?;
        Ok(acc + atoms * per)
    })
}

pub fn orbital_to_atom_ratio(m: &MoleculeSpec, h: &BasisHeuristic) -> Result<f64> {
    Ok(orbital_count(m, h)? as f64 / m.atom_count() as f64)
}

pub fn atoms_from_basis_functions(n: f64, ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) {
        return Err(Error::Domain(format!(
            "ratio must be positive, got {ratio}"
        )));
    }
    Ok(n / ratio)
}
