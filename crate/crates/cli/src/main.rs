// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qea_core::advantage::{
    deadline_limited_size, feasibility_envelope, min_advantageous_size, qea_threshold,
    qubit_limited_size, Threshold,
};
use qea_core::calibrate::{calibrate, Anchor, TrendParam};
use qea_core::catalog::{CLASSICAL_TABLE_METHODS, QUANTUM_TABLE_METHODS};
use qea_core::chem::{atoms_from_basis_functions, orbital_count, BasisHeuristic, MoleculeSpec};
use qea_core::cost::{flop_adjusted_constant, naive_t_gate_estimate};
use qea_core::report::{
    csv_string, disruption_table, format_count, format_number, format_year, qea_curve_series,
    robustness_table, text_grid,
};
use qea_core::{Error, Scenario, Variation};

const EXIT_SCENARIO: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EARLIEST_SENSIBLE_YEAR: f64 = 2024.0;

/// Forecast quantum economic advantage for chemistry workloads.
#[derive(Parser, Debug)]
#[command(name = "qea", version)]
struct Cli {
    /// Scenario JSON file; the shipped default is used when absent.
    #[arg(long, global = true, env = "QEA_SCENARIO")]
    scenario: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write data here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First advantage year for every classical/quantum pair.
    Table(TableArgs),
    /// Disruption years under constant-factor variations.
    Robustness(RobustnessArgs),
    /// Threshold and feasibility envelope over a range of years.
    Curve(CurveArgs),
    /// Crossover size for one pair in one year.
    Threshold(ThresholdArgs),
    /// Largest runnable problem size for a quantum method.
    Feasible(FeasibleArgs),
    /// Flop-adjusted constant from a measured runtime.
    Constant(ConstantArgs),
    /// Naive T-gate count N^a / epsilon.
    Tgates(TgatesArgs),
    /// Convert between basis functions and atoms.
    Convert(ConvertArgs),
    /// Fit trend growth rates to anchor years and print the scenario.
    Calibrate(CalibrateArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_delimiter = ',', default_values_t = QUANTUM_TABLE_METHODS.map(String::from))]
    quantum: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = CLASSICAL_TABLE_METHODS.map(String::from))]
    classical: Vec<String>,
}

#[derive(Args, Debug)]
struct RobustnessArgs {
    #[arg(long, default_value = "qpe-n3")]
    quantum: String,
    #[arg(long, value_delimiter = ',', default_values_t = CLASSICAL_TABLE_METHODS.map(String::from))]
    classical: Vec<String>,
    /// `logical=0.1`, `quantum_time=10` or `classical_time=0.001`; repeatable.
    /// Without any, the three standard variations are used.
    #[arg(long)]
    vary: Vec<String>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    classical: String,
    #[arg(long)]
    quantum: String,
    #[arg(long, default_value_t = 2025.0)]
    from: f64,
    #[arg(long, default_value_t = 2050.0)]
    to: f64,
    #[arg(long, default_value_t = 1.0)]
    step: f64,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long)]
    year: f64,
    #[arg(long, default_value = "CCSD")]
    classical: String,
    #[arg(long, default_value = "qpe-n3")]
    quantum: String,
    /// Set epsilon to 1 so the error exponent drops out.
    #[arg(long)]
    no_epsilon: bool,
}

#[derive(Args, Debug)]
struct FeasibleArgs {
    #[arg(long)]
    year: f64,
    #[arg(long, default_value = "qpe-n3")]
    quantum: String,
    /// Overrides the scenario deadline.
    #[arg(long)]
    deadline_s: Option<f64>,
}

#[derive(Args, Debug)]
struct ConstantArgs {
    #[arg(long)]
    time_s: f64,
    #[arg(long)]
    peak_flops: f64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    exponent: f64,
}

#[derive(Args, Debug)]
struct TgatesArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    exponent: f64,
    /// Defaults to the scenario's epsilon.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// `El:count,...`, e.g. `Fe:7,Mo:1,S:9,C:1`.
    #[arg(long, conflicts_with = "ratio")]
    molecule: Option<String>,
    #[arg(long, default_value = "femoco-mixed")]
    heuristic: String,
    /// Orbitals per atom, used with `--n`.
    #[arg(long, requires = "n")]
    ratio: Option<f64>,
    /// Basis functions to convert to atoms.
    #[arg(long)]
    n: Option<f64>,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    /// `CLASSICAL:QUANTUM:YEAR`; repeatable, paired in order with `--free`.
    #[arg(long, required = true)]
    anchor: Vec<String>,
    /// Trend parameter path such as `quantum.logical_tgate_trend.annual_factor`.
    #[arg(long, required = true)]
    free: Vec<String>,
}

/// Tabular result: header plus full-precision CSV cells and human text cells.
struct Records {
    header: Vec<&'static str>,
    csv: Vec<Vec<String>>,
    text: Vec<Vec<String>>,
}

impl Records {
    fn new(header: &[&'static str]) -> Self {
        Records {
            header: header.to_vec(),
            csv: Vec::new(),
            text: Vec::new(),
        }
    }

    fn push(&mut self, cells: Vec<(String, String)>) {
        let (csv, text) = cells.into_iter().unzip();
        self.csv.push(csv);
        self.text.push(text);
    }
}

fn num(x: f64) -> (String, String) {
    (x.to_string(), format_number(x))
}

fn int(x: u64) -> (String, String) {
    (x.to_string(), format_count(x))
}

fn year(y: f64) -> (String, String) {
    (y.to_string(), format_year(y))
}

fn word(s: &str) -> (String, String) {
    (s.to_string(), s.to_string())
}

enum Rendered {
    Csv(String),
    Text(String),
    Raw(String),
}

fn warn_year(year: f64) {
    if year < EARLIEST_SENSIBLE_YEAR {
        eprintln!(
            "warning: year {year} precedes the trend data; values are extrapolated backwards"
        );
    }
}

fn load_scenario(cli: &Cli) -> Result<Scenario> {
    match &cli.scenario {
        Some(path) => Ok(Scenario::load(path)?),
        None => Ok(qea_core::default_scenario()),
    }
}

fn render(cli: &Cli, f: impl FnOnce() -> (Result<String>, String)) -> Result<Rendered> {
    let (csv, text) = f();
    Ok(match cli.format {
        Format::Csv => Rendered::Csv(csv?),
        Format::Text => Rendered::Text(text),
    })
}

fn records(cli: &Cli, r: Records) -> Result<Rendered> {
    render(cli, || {
        let header: Vec<String> = r.header.iter().map(|h| h.to_string()).collect();
        (
            csv_string(&r.header, &r.csv).map_err(Into::into),
            text_grid(&header, &r.text),
        )
    })
}

fn names(list: &[String]) -> Vec<&str> {
    list.iter().map(String::as_str).collect()
}

fn run(cli: &Cli) -> Result<(Rendered, Option<Scenario>)> {
    let scenario = load_scenario(cli)?;
    let out = match &cli.command {
        Command::Table(a) => {
            let t = disruption_table(&scenario, &names(&a.quantum), &names(&a.classical))?;
            render(cli, || (t.to_csv().map_err(Into::into), t.to_text()))?
        }
        Command::Robustness(a) => {
            let variations = if a.vary.is_empty() {
                Variation::standard_set()
            } else {
                a.vary
                    .iter()
                    .map(|v| Variation::parse(v))
                    .collect::<qea_core::Result<_>>()?
            };
            let t = robustness_table(&scenario, &variations, &a.quantum, &names(&a.classical))?;
            render(cli, || (t.to_csv().map_err(Into::into), t.to_text()))?
        }
        Command::Curve(a) => {
            warn_year(a.from);
            let c = qea_curve_series(&scenario, &a.classical, &a.quantum, a.from, a.to, a.step)?;
            render(cli, || (c.to_csv().map_err(Into::into), c.to_text()))?
        }
        Command::Threshold(a) => {
            warn_year(a.year);
            let mut s = scenario.clone();
            if a.no_epsilon {
                s.epsilon = 1.0;
            }
            let c = s.algorithm(&a.classical)?;
            let q = s.algorithm(&a.quantum)?;
            let t = qea_threshold(&c, &q, a.year, &s)?;
            let min_n = min_advantageous_size(&c, &q, a.year, &s, t)?;
            let mut r = Records::new(&[
                "classical",
                "quantum",
                "year",
                "threshold_n",
                "min_advantageous_n",
            ]);
            r.push(vec![
                word(&c.name),
                word(&q.name),
                year(a.year),
                match t {
                    Threshold::At(n) => num(n),
                    Threshold::Never => (String::new(), "never".into()),
                },
                min_n
                    .map(int)
                    .unwrap_or_else(|| (String::new(), "-".into())),
            ]);
            records(cli, r)?
        }
        Command::Feasible(a) => {
            warn_year(a.year);
            let q = scenario.algorithm(&a.quantum)?;
            let env = match a.deadline_s {
                None => feasibility_envelope(&q, a.year, &scenario)?,
                Some(d) => {
                    let qubit = qubit_limited_size(&q, a.year, &scenario)?;
                    let deadline = deadline_limited_size(&q, a.year, d, &scenario)?;
                    qea_core::FeasibilityEnvelope {
                        qubit_limited_n: qubit,
                        deadline_limited_n: deadline,
                        max_feasible_n: qubit.min(deadline),
                    }
                }
            };
            let mut r = Records::new(&[
                "quantum",
                "year",
                "qubit_limited_n",
                "deadline_limited_n",
                "max_feasible_n",
            ]);
            r.push(vec![
                word(&q.name),
                year(a.year),
                int(env.qubit_limited_n),
                int(env.deadline_limited_n),
                int(env.max_feasible_n),
            ]);
            records(cli, r)?
        }
        Command::Constant(a) => {
            if a.n == 0 || !(a.time_s > 0.0) || !(a.peak_flops > 0.0) {
                return Err(Error::Domain("need n >= 1 and positive time and flops".into()).into());
            }
            let c = flop_adjusted_constant(a.time_s, a.peak_flops, a.n, a.exponent);
            let mut r = Records::new(&["constant"]);
            r.push(vec![num(c)]);
            records(cli, r)?
        }
        Command::Tgates(a) => {
            let eps = a.epsilon.unwrap_or(scenario.epsilon);
            if a.n == 0 || !(eps > 0.0 && eps <= 1.0) {
                return Err(Error::Domain("need n >= 1 and epsilon in (0, 1]".into()).into());
            }
            let mut r = Records::new(&["t_gates"]);
            r.push(vec![num(naive_t_gate_estimate(a.n, a.exponent, eps))]);
            records(cli, r)?
        }
        Command::Convert(a) => match (&a.molecule, a.ratio, a.n) {
            (Some(m), None, _) => {
                let m: MoleculeSpec = m.parse()?;
                let h = BasisHeuristic::builtin(&a.heuristic)?;
                let orbitals = orbital_count(&m, &h)?;
                let ratio = orbitals as f64 / m.atom_count() as f64;
                let mut r = Records::new(&["heuristic", "atoms", "orbitals", "ratio"]);
                r.push(vec![
                    word(&h.name),
                    int(m.atom_count()),
                    int(orbitals),
                    (ratio.to_string(), format!("{ratio:.1}")),
                ]);
                if let Some(n) = a.n {
                    let atoms = atoms_from_basis_functions(n, ratio)?;
                    eprintln!("{n} basis functions ~ {} atoms", format_number(atoms));
                }
                records(cli, r)?
            }
            (None, Some(ratio), Some(n)) => {
                let atoms = atoms_from_basis_functions(n, ratio)?;
                let mut r = Records::new(&["basis_functions", "ratio", "atoms"]);
                r.push(vec![num(n), num(ratio), num(atoms)]);
                records(cli, r)?
            }
            _ => bail!(Usage(
                "convert needs --molecule, or --ratio with --n".into()
            )),
        },
        Command::Calibrate(a) => {
            let anchors = a
                .anchor
                .iter()
                .map(|s| s.parse::<Anchor>())
                .collect::<qea_core::Result<Vec<_>>>()?;
            let free = a
                .free
                .iter()
                .map(|s| s.parse::<TrendParam>())
                .collect::<qea_core::Result<Vec<_>>>()?;
            // Fitting starts from flat rates unless a scenario is supplied.
            let base = match &cli.scenario {
                Some(_) => scenario.clone(),
                None => Scenario::uncalibrated(),
            };
            let fitted = calibrate(&base, &free, &anchors)?;
            for p in &free {
                eprintln!("{p} = {:?}", p.get(&fitted));
            }
            let json = fitted.to_json_pretty() + "\n";
            return Ok((Rendered::Raw(json), None));
        }
    };
    Ok((out, Some(scenario)))
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn emit(cli: &Cli, rendered: Rendered, scenario: Option<&Scenario>) -> Result<()> {
    let body = match rendered {
        Rendered::Csv(csv) => match scenario {
            Some(s) => format!("# scenario sha256={}\n{csv}", s.fingerprint()),
            None => csv,
        },
        Rendered::Text(t) | Rendered::Raw(t) => t,
    };
    match &cli.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Usage>() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::InfeasibleAnchor { .. }) => EXIT_INFEASIBLE,
        Some(_) => EXIT_SCENARIO,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(r, s)| emit(&cli, r, s.as_ref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
