//! Fits trend growth rates so that chosen method pairs first reach
//! advantage in chosen years.
//!
//! Parameter `i` is paired with anchor `i`. Each sweep visits the
//! parameters in order and bisects one growth factor over
//! [`FACTOR_RANGE`] for the slowest growth that still brings its anchor in
//! by the target year, holding the others fixed. Sweeps repeat until every
//! anchor is hit at once.

use std::fmt;
use std::str::FromStr;

use crate::advantage::{first_advantage_year, Verdict};
use crate::error::{Error, Result};
use crate::hardware::ExponentialTrend;
use crate::scenario::Scenario;

pub const FACTOR_RANGE: (f64, f64) = (1.0, 4.0);
pub const FACTOR_TOLERANCE: f64 = 1e-4;
const MAX_SWEEPS: usize = 50;

/// Annual factor of one scenario trend, named by its file path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrendParam {
    ClassicalFlops,
    LogicalTgate,
    PhysicalQubits,
    Ratio,
    PhysicalError,
}

impl TrendParam {
    const ALL: [TrendParam; 5] = [
        TrendParam::ClassicalFlops,
        TrendParam::LogicalTgate,
        TrendParam::PhysicalQubits,
        TrendParam::Ratio,
        TrendParam::PhysicalError,
    ];

    pub fn path(self) -> &'static str {
        match self {
            TrendParam::ClassicalFlops => "classical.flops_trend.annual_factor",
            TrendParam::LogicalTgate => "quantum.logical_tgate_trend.annual_factor",
            TrendParam::PhysicalQubits => "quantum.physical_qubit_trend.annual_factor",
            TrendParam::Ratio => "quantum.ratio_trend.annual_factor",
            TrendParam::PhysicalError => "quantum.physical_error_trend.annual_factor",
        }
    }

    fn trend_mut(self, s: &mut Scenario) -> &mut ExponentialTrend {
        match self {
            TrendParam::ClassicalFlops => &mut s.classical.flops_trend,
            TrendParam::LogicalTgate => &mut s.quantum.logical_tgate_trend,
            TrendParam::PhysicalQubits => &mut s.quantum.physical_qubit_trend,
            TrendParam::Ratio => &mut s.quantum.ratio_trend,
            TrendParam::PhysicalError => &mut s.quantum.physical_error_trend,
        }
    }

    pub fn get(self, s: &Scenario) -> f64 {
        let mut copy = s.clone();
        self.trend_mut(&mut copy).annual_factor
    }

    pub fn set(self, s: &mut Scenario, value: f64) {
        self.trend_mut(s).annual_factor = value;
    }

    /// Whether a larger factor helps the quantum side.
    fn favours_quantum(self) -> bool {
        matches!(self, TrendParam::LogicalTgate | TrendParam::PhysicalQubits)
    }
}

impl FromStr for TrendParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TrendParam::ALL
            .into_iter()
            .find(|p| p.path() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown trend parameter `{s}`")))
    }
}

impl fmt::Display for TrendParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.path())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    pub classical: String,
    pub quantum: String,
    pub year: i32,
}

impl Anchor {
    pub fn new(classical: &str, quantum: &str, year: i32) -> Self {
        Anchor {
            classical: classical.to_string(),
            quantum: quantum.to_string(),
            year,
        }
    }

    pub fn verdict(&self, s: &Scenario) -> Result<Verdict> {
        let c = s.algorithm(&self.classical)?;
        let q = s.algorithm(&self.quantum)?;
        Ok(first_advantage_year(&c, &q, s)?.verdict)
    }

    fn is_met(&self, s: &Scenario) -> Result<bool> {
        Ok(self.verdict(s)? == Verdict::Year(self.year))
    }
}

/// `CLASSICAL:QUANTUM:YEAR`, e.g. `FCI:qpe-n3:2032`.
impl FromStr for Anchor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [c, q, y] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "anchor `{s}` is not CLASSICAL:QUANTUM:YEAR"
            )));
        };
        let year = y
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("anchor `{s}`: bad year")))?;
        Ok(Anchor::new(c.trim(), q.trim(), year))
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.classical, self.quantum, self.year)
    }
}

/// Smallest factor in the search range at which the anchor pair arrives no
/// later than `year`, found to within [`FACTOR_TOLERANCE`]. The returned value
/// is the upper end of the final bracket, so it satisfies the condition.
fn earliest_factor(
    s: &Scenario,
    param: TrendParam,
    anchor: &Anchor,
    year: i32,
) -> Result<Option<f64>> {
    let (lo_end, hi_end) = FACTOR_RANGE;
    let mut trial = s.clone();
    let mut arrives = |x: f64| -> Result<bool> {
        param.set(&mut trial, x);
        Ok(anchor.verdict(&trial)?.sort_key() <= i64::from(year))
    };
    // Factors that hurt the quantum side run the search in reverse.
    let (mut good, mut bad) = if param.favours_quantum() {
        (hi_end, lo_end)
    } else {
        (lo_end, hi_end)
    };
    if !arrives(good)? {
        return Ok(None);
    }
    if arrives(bad)? {
        return Ok(Some(bad));
    }
    while (good - bad).abs() > FACTOR_TOLERANCE {
        let mid = 0.5 * (good + bad);
        if arrives(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(Some(good))
}

pub fn calibrate(
    base: &Scenario,
    free_params: &[TrendParam],
    anchors: &[Anchor],
) -> Result<Scenario> {
    if free_params.len() != anchors.len() {
        return Err(Error::Parse(format!(
            "{} free parameters for {} anchors",
            free_params.len(),
            anchors.len()
        )));
    }
    let mut s = base.clone();
    if anchors.is_empty() {
        return Ok(s);
    }
    for anchor in anchors {
        // A never verdict does not depend on growth rates.
        let c = s.algorithm(&anchor.classical)?;
        let q = s.algorithm(&anchor.quantum)?;
        if first_advantage_year(&c, &q, &s)?.verdict == Verdict::Never {
            return Err(Error::InfeasibleAnchor {
                anchor: anchor.to_string(),
                reason: "the pair has no asymptotic advantage".into(),
            });
        }
        if anchor.year < s.start_year || anchor.year > s.horizon {
            return Err(Error::InfeasibleAnchor {
                anchor: anchor.to_string(),
                reason: format!("year outside {}..={}", s.start_year, s.horizon),
            });
        }
    }

    for _ in 0..MAX_SWEEPS {
        for (param, anchor) in free_params.iter().zip(anchors) {
            let x = earliest_factor(&s, *param, anchor, anchor.year)?.ok_or_else(|| {
                Error::InfeasibleAnchor {
                    anchor: anchor.to_string(),
                    reason: format!(
                        "not reached by {} for any {param} in {FACTOR_RANGE:?}",
                        anchor.year
                    ),
                }
            })?;
            param.set(&mut s, x);
            if !anchor.is_met(&s)? {
                return Err(Error::InfeasibleAnchor {
                    anchor: anchor.to_string(),
                    reason: format!(
                        "{param} moves the verdict past {} without landing on it",
                        anchor.year
                    ),
                });
            }
        }
        let mut all = true;
        for a in anchors {
            all &= a.is_met(&s)?;
        }
        if all {
            return Ok(s);
        }
    }
    Err(Error::InfeasibleAnchor {
        anchor: anchors
            .iter()
            .map(Anchor::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        reason: format!("no joint solution after {MAX_SWEEPS} sweeps"),
    })
}

/// The two anchors and free rates behind the shipped default scenario.
pub fn default_calibration() -> (Vec<TrendParam>, Vec<Anchor>) {
    (
        vec![TrendParam::PhysicalQubits, TrendParam::LogicalTgate],
        vec![
            Anchor::new("FCI", "qpe-n3", 2032),
            Anchor::new("CCSD(T)", "qpe-n3", 2036),
        ],
    )
}
