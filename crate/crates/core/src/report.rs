//! Disruption tables, robustness tables and per-year curve series, with CSV
//! and plain-text renderings.

use crate::advantage::{advantage_region_at, first_advantage_year, DisruptionResult, Threshold};
use crate::catalog::AlgorithmSpec;
use crate::error::{Error, Result};
use crate::scenario::{apply_variation, Scenario, Variation};

pub const TABLE_HEADER: [&str; 4] = ["classical", "quantum", "verdict", "binding_constraint"];
pub const ROBUSTNESS_HEADER: [&str; 5] = [
    "classical",
    "quantum",
    "variation",
    "verdict",
    "binding_constraint",
];
pub const SERIES_HEADER: [&str; 6] = [
    "year",
    "threshold_n",
    "qubit_limited_n",
    "deadline_limited_n",
    "max_feasible_n",
    "region_nonempty",
];

/// Human-facing number format: two decimals between 0.01 and 10⁶, otherwise
/// three significant figures in exponent form.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if !x.is_finite() {
        format!("{x}")
    } else if (1e-2..1e6).contains(&x.abs()) {
        format!("{x:.2}")
    } else {
        format!("{x:.2e}")
    }
}

/// Sizes print exactly below 10⁶ and in exponent form above.
pub fn format_count(n: u64) -> String {
    if n < 1_000_000 {
        n.to_string()
    } else {
        format_number(n as f64)
    }
}

/// Whole years without decimals, fractional years as given.
pub fn format_year(y: f64) -> String {
    if y.fract() == 0.0 && y.abs() < 1e9 {
        format!("{y:.0}")
    } else {
        y.to_string()
    }
}

/// RFC 4180 CSV with `\n` line endings.
pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

/// Left-aligned columns under a dashed rule.
pub fn text_grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &line(&rule);
    for row in rows {
        out += &line(row);
    }
    out
}

fn cell_text(r: &DisruptionResult) -> String {
    format!("{} ({})", r.verdict, r.binding_constraint)
}

fn resolve(s: &Scenario, names: &[&str]) -> Result<Vec<AlgorithmSpec>> {
    if names.is_empty() {
        return Err(Error::Domain("method list is empty".into()));
    }
    names.iter().map(|n| s.algorithm(n)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisruptionTable {
    pub classical: Vec<String>,
    pub quantum: Vec<String>,
    /// `cells[row][col]`: row per classical method, column per quantum method.
    pub cells: Vec<Vec<DisruptionResult>>,
}

impl DisruptionTable {
    pub fn cell(&self, classical: &str, quantum: &str) -> Option<&DisruptionResult> {
        let canonical = |n: &str| crate::catalog::canonical_name(n).unwrap_or(n).to_string();
        let r = self
            .classical
            .iter()
            .position(|c| *c == canonical(classical))?;
        let q = self.quantum.iter().position(|c| *c == canonical(quantum))?;
        Some(&self.cells[r][q])
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut rows = Vec::new();
        for (c, row) in self.classical.iter().zip(&self.cells) {
            for (q, cell) in self.quantum.iter().zip(row) {
                rows.push(vec![
                    c.clone(),
                    q.clone(),
                    cell.verdict.to_string(),
                    cell.binding_constraint.to_string(),
                ]);
            }
        }
        csv_string(&TABLE_HEADER, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut header = vec!["classical".to_string()];
        header.extend(self.quantum.iter().cloned());
        let rows: Vec<Vec<String>> = self
            .classical
            .iter()
            .zip(&self.cells)
            .map(|(c, row)| {
                std::iter::once(c.clone())
                    .chain(row.iter().map(cell_text))
                    .collect()
            })
            .collect();
        text_grid(&header, &rows)
    }
}

pub fn disruption_table(
    scenario: &Scenario,
    quantum_methods: &[&str],
    classical_methods: &[&str],
) -> Result<DisruptionTable> {
    let quantum = resolve(scenario, quantum_methods)?;
    let classical = resolve(scenario, classical_methods)?;
    let mut cells = Vec::with_capacity(classical.len());
    for c in &classical {
        let row = quantum
            .iter()
            .map(|q| first_advantage_year(c, q, scenario))
            .collect::<Result<Vec<_>>>()?;
        cells.push(row);
    }
    Ok(DisruptionTable {
        classical: classical.into_iter().map(|a| a.name).collect(),
        quantum: quantum.into_iter().map(|a| a.name).collect(),
        cells,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessTable {
    pub quantum: String,
    pub classical: Vec<String>,
    /// `original` followed by one label per variation.
    pub columns: Vec<String>,
    pub cells: Vec<Vec<DisruptionResult>>,
}

impl RobustnessTable {
    pub fn cell(&self, classical: &str, column: &str) -> Option<&DisruptionResult> {
        let canonical = crate::catalog::canonical_name(classical).unwrap_or(classical);
        let r = self.classical.iter().position(|c| c == canonical)?;
        let k = self.columns.iter().position(|c| c == column)?;
        Some(&self.cells[r][k])
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut rows = Vec::new();
        for (c, row) in self.classical.iter().zip(&self.cells) {
            for (col, cell) in self.columns.iter().zip(row) {
                rows.push(vec![
                    c.clone(),
                    self.quantum.clone(),
                    col.clone(),
                    cell.verdict.to_string(),
                    cell.binding_constraint.to_string(),
                ]);
            }
        }
        csv_string(&ROBUSTNESS_HEADER, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut header = vec![format!("{} / classical", self.quantum)];
        header.extend(self.columns.iter().cloned());
        let rows: Vec<Vec<String>> = self
            .classical
            .iter()
            .zip(&self.cells)
            .map(|(c, row)| {
                std::iter::once(c.clone())
                    .chain(row.iter().map(cell_text))
                    .collect()
            })
            .collect();
        text_grid(&header, &rows)
    }
}

pub const BASELINE_COLUMN: &str = "original";

pub fn robustness_table(
    scenario: &Scenario,
    variations: &[Variation],
    quantum: &str,
    classical_methods: &[&str],
) -> Result<RobustnessTable> {
    let q_name = scenario.algorithm(quantum)?.name;
    let classical = resolve(scenario, classical_methods)?;
    let scenarios: Vec<Scenario> = std::iter::once(scenario.clone())
        .chain(variations.iter().map(|v| apply_variation(scenario, v)))
        .collect();
    let mut cells = Vec::with_capacity(classical.len());
    for c in &classical {
        let row = scenarios
            .iter()
            .map(|s| {
                let c = s.algorithm(&c.name)?;
                let q = s.algorithm(&q_name)?;
                first_advantage_year(&c, &q, s)
            })
            .collect::<Result<Vec<_>>>()?;
        cells.push(row);
    }
    let columns = std::iter::once(BASELINE_COLUMN.to_string())
        .chain(variations.iter().map(|v| v.name.clone()))
        .collect();
    Ok(RobustnessTable {
        quantum: q_name,
        classical: classical.into_iter().map(|a| a.name).collect(),
        columns,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub year: f64,
    /// `None` when the pair has no advantage at any size that year.
    pub threshold_n: Option<f64>,
    pub qubit_limited_n: u64,
    pub deadline_limited_n: u64,
    pub max_feasible_n: u64,
    pub region_nonempty: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub classical: String,
    pub quantum: String,
    pub rows: Vec<SeriesRow>,
}

impl CurveSeries {
    pub fn to_csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.year.to_string(),
                    r.threshold_n.map(|t| t.to_string()).unwrap_or_default(),
                    r.qubit_limited_n.to_string(),
                    r.deadline_limited_n.to_string(),
                    r.max_feasible_n.to_string(),
                    r.region_nonempty.to_string(),
                ]
            })
            .collect();
        csv_string(&SERIES_HEADER, &rows)
    }

    pub fn to_text(&self) -> String {
        let header: Vec<String> = SERIES_HEADER.iter().map(|h| h.to_string()).collect();
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    format_year(r.year),
                    r.threshold_n
                        .map(format_number)
                        .unwrap_or_else(|| "-".into()),
                    format_count(r.qubit_limited_n),
                    format_count(r.deadline_limited_n),
                    format_count(r.max_feasible_n),
                    r.region_nonempty.to_string(),
                ]
            })
            .collect();
        format!(
            "{} vs {}\n{}",
            self.quantum,
            self.classical,
            text_grid(&header, &rows)
        )
    }
}

pub fn qea_curve_series(
    scenario: &Scenario,
    classical: &str,
    quantum: &str,
    year_from: f64,
    year_to: f64,
    step: f64,
) -> Result<CurveSeries> {
    if !(step > 0.0) || !(year_from <= year_to) {
        return Err(Error::Domain(format!(
            "need year_from <= year_to and step > 0, got {year_from}..{year_to} step {step}"
        )));
    }
    let c = scenario.algorithm(classical)?;
    let q = scenario.algorithm(quantum)?;
    let steps = ((year_to - year_from) / step + 1e-9).floor() as u64;
    let mut rows = Vec::with_capacity(steps as usize + 1);
    for i in 0..=steps {
        let year = year_from + i as f64 * step;
        let region = advantage_region_at(&c, &q, year, scenario)?;
        rows.push(SeriesRow {
            year,
            threshold_n: match region.threshold {
                Threshold::At(n) => Some(n),
                Threshold::Never => None,
            },
            qubit_limited_n: region.envelope.qubit_limited_n,
            deadline_limited_n: region.envelope.deadline_limited_n,
            max_feasible_n: region.envelope.max_feasible_n,
            region_nonempty: region.nonempty,
        });
    }
    Ok(CurveSeries {
        classical: c.name,
        quantum: q.name,
        rows,
    })
}
