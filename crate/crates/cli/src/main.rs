//! `bellpair`: batch front end for Bell-pair correlation analysis.
//!
//! Exit codes: 0 ok, 2 parse or input error, 3 invalid pair, 4 verification
//! failure, 5 oracle failure.

mod grid;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use bellpair_core::bellpair::DEFAULT_TOLERANCE;
use bellpair_core::io::{
    pair_to_json, parse_candidate, parse_pair, parse_state, solver_outcome_to_json,
    validation_report_to_json,
};
use bellpair_core::oracle::{self, OracleOutcome};
use bellpair_core::{
    abmax_state, analyze, classify, correlation_matrix, find_maximally_correlated, find_separable,
    maxent_state, phi_state, realize_correlation, restrict, total_correlation, validate,
    ABMaxParams, BellPair, Error, GeneratorTable, MaxEntParams, PhiParams, Preset, PureState,
    State, Thresholds,
};

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_PAIR: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;
const EXIT_ORACLE: u8 = 5;

/// Tolerance for the measured total correlation of a realized pair.
const REALIZE_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(
    name = "bellpair",
    version,
    about = "Two-qubit correlation analysis relative to Bell pairs of subalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correlation matrix, total correlation, Bloch vectors and classification of a state.
    Analyze {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every Bell-pair condition and print the report.
    ValidatePair {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a state family over a parameter grid and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        pair: PairArgs,
        /// Repeatable, e.g. `--grid a=0:1:11 --grid phi=0:pi:11`.
        #[arg(long = "grid", required = true)]
        grids: Vec<String>,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a separable state with given Bloch vectors, or a maximally correlated state.
    Solve {
        #[arg(long, value_enum)]
        mode: SolveMode,
        #[command(flatten)]
        pair: PairArgs,
        /// Target Bloch vector of the left restriction, `x,y,z` (separable mode).
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        /// Target Bloch vector of the right restriction, `x,y,z` (separable mode).
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, env = "BELLPAIR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a pair under which the state has total correlation `c`.
    Realize {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded self-checks.
    OracleCheck {
        #[arg(long, env = "BELLPAIR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Observable samples per case of the brute-force oracle.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Negative control: run the w-vector oracle against a generator table with two entries swapped.
        #[arg(long, hide = true)]
        misordered: bool,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Preset name (canonical, paper-AB, paper-prime) or pair JSON file.
    #[arg(long)]
    pair: String,
    /// Tolerance for validating explicit pairs.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, default_value_t = 1e-7)]
    eps_sep: f64,
    #[arg(long, default_value_t = 1e-7)]
    eps_max: f64,
}

impl ThresholdArgs {
    fn thresholds(&self) -> Thresholds {
        Thresholds {
            eps_sep: self.eps_sep,
            eps_max: self.eps_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Phi,
    Maxent,
    Abmax,
}

impl Family {
    fn params(&self) -> &'static [&'static str] {
        match self {
            Family::Phi => &["c"],
            Family::Maxent => &["a", "phi", "theta"],
            Family::Abmax => &["r", "phi", "theta"],
        }
    }

    fn state(&self, p: &[f64]) -> bellpair_core::Result<PureState> {
        match self {
            Family::Phi => phi_state(PhiParams::new(p[0])?),
            Family::Maxent => maxent_state(MaxEntParams::new(p[0], p[1], p[2])?),
            Family::Abmax => abmax_state(ABMaxParams::new(p[0], p[1], p[2])?),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    Separable,
    MaxCorrelated,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidPair(_) => EXIT_INVALID_PAIR,
            Error::NonConvergence { .. } => EXIT_VERIFICATION,
            _ => EXIT_PARSE,
        };
        let message = match &e {
            Error::InvalidPair(report) => format!("{e}\n{report}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn with_context(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn load_state(path: &Path) -> CliResult<State> {
    parse_state(&read(path)?).map_err(|e| with_context(path, e))
}

fn load_pure(path: &Path, op: &'static str) -> CliResult<PureState> {
    match load_state(path)? {
        State::Pure(psi) => Ok(psi),
        State::Mixed(_) => Err(Failure::from(Error::MixedStateUnsupported(op))),
    }
}

fn load_pair(args: &PairArgs) -> CliResult<BellPair> {
    if let Ok(preset) = args.pair.parse::<Preset>() {
        return Ok(preset.pair());
    }
    let path = Path::new(&args.pair);
    if !path.exists() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!(
                "--pair `{}` is neither a preset ({}) nor a readable file",
                args.pair,
                preset_names()
            ),
        ));
    }
    parse_pair(&read(path)?, args.tol).map_err(|e| with_context(path, e))
}

fn preset_names() -> String {
    Preset::ALL
        .iter()
        .map(|p| p.name())
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_vector(flag: &str, text: Option<&str>) -> CliResult<[f64; 3]> {
    let text = text.ok_or_else(|| {
        Failure::new(
            EXIT_PARSE,
            format!("--{flag} is required in separable mode"),
        )
    })?;
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || {
        Failure::new(
            EXIT_PARSE,
            format!("--{flag} `{text}`: expected three comma-separated numbers"),
        )
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (k, p) in parts.iter().enumerate() {
        v[k] = p.trim().parse().map_err(|_| bad())?;
    }
    Ok(v)
}

fn run_analyze(state: &Path, pair: &PairArgs, t: Thresholds, out: Option<&Path>) -> CliResult<()> {
    let state = load_state(state)?;
    let pair = load_pair(pair)?;
    let report = match &state {
        State::Pure(psi) => serde_json::to_value(analyze(psi, &pair, t)).expect("serializable"),
        State::Mixed(rho) => {
            // The correlation matrix and Bloch vectors are well defined, the
            // norm identity and classification are not.
            let b = restrict(rho, &pair);
            json!({
                "q": correlation_matrix(rho, &pair).0,
                "norm": null,
                "r": b.r,
                "s": b.s,
                "classification": null,
            })
        }
    };
    emit(out, &pretty(&report))
}

fn run_validate(args: &PairArgs, out: Option<&Path>) -> CliResult<()> {
    let candidate = match args.pair.parse::<Preset>() {
        Ok(p) => p.pair().to_candidate(),
        Err(_) => {
            let path = Path::new(&args.pair);
            parse_candidate(&read(path)?).map_err(|e| with_context(path, e))?
        }
    };
    let report = validate(&candidate, args.tol);
    emit(out, &pretty(&validation_report_to_json(&report)))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_INVALID_PAIR,
            format!("invalid Bell pair:\n{report}"),
        ))
    }
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn run_sweep(
    family: Family,
    pair: &PairArgs,
    grids: &[String],
    t: Thresholds,
    out: Option<&Path>,
) -> CliResult<()> {
    let pair = load_pair(pair)?;
    let axes = grids
        .iter()
        .map(|g| grid::parse_axis(g))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|axes| grid::arrange(axes, family.params()))
        .map_err(|e| Failure::new(EXIT_PARSE, e))?;
    let points = grid::points(&axes);

    // Cells run in parallel; collect() keeps grid order.
    let rows: Vec<String> = points
        .par_iter()
        .map(|p| -> CliResult<String> {
            let psi = family.state(p)?;
            let cls = classify(&psi, &pair, t);
            let mut row = String::new();
            for v in p {
                write!(row, "{},", format_float(*v)).unwrap();
            }
            write!(
                row,
                "{},{},{},{}",
                format_float(cls.total_correlation),
                format_float(cls.restriction.r_norm()),
                format_float(cls.restriction.s_norm()),
                cls.kind.name()
            )
            .unwrap();
            Ok(row)
        })
        .collect::<CliResult<_>>()?;

    let mut csv = family.params().join(",");
    csv.push_str(",norm,r_norm,s_norm,classification\n");
    for r in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    emit(out, &csv)
}

fn run_solve(
    mode: SolveMode,
    pair: &PairArgs,
    r: Option<&str>,
    s: Option<&str>,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<()> {
    let pair = load_pair(pair)?;
    let outcome = match mode {
        SolveMode::Separable => {
            let r = parse_vector("r", r)?;
            let s = parse_vector("s", s)?;
            find_separable(&pair, r, s, seed)?
        }
        SolveMode::MaxCorrelated => find_maximally_correlated(&pair, seed)?,
    };
    emit(out, &pretty(&solver_outcome_to_json(&outcome)))
}

fn run_realize(state: &Path, c: f64, out: Option<&Path>) -> CliResult<()> {
    let psi = load_pure(state, "realize")?;
    let pair = realize_correlation(&psi, c)?;
    let measured = total_correlation(&psi, &pair);
    emit(out, &pretty(&pair_to_json(&pair)))?;
    let line = format!("measured total correlation: {measured:.16e} (target {c})");
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    if (measured - c).abs() > REALIZE_TOLERANCE {
        return Err(Failure::new(
            EXIT_VERIFICATION,
            format!("verification failed: |{measured} - {c}| > {REALIZE_TOLERANCE:e}"),
        ));
    }
    Ok(())
}

fn oracle_line(o: &OracleOutcome) -> String {
    format!(
        "{} {}: cases={} max_deviation={:.3e} tolerance={:.1e} worst_seed={}",
        if o.passed { "PASS" } else { "FAIL" },
        o.name,
        o.cases,
        o.max_deviation,
        o.tolerance,
        o.worst_seed
    )
}

fn run_oracles(seed: u64, n: usize, samples: usize, misordered: bool) -> CliResult<()> {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "--n must be at least 1"));
    }
    let table = if misordered {
        GeneratorTable::standard().with_swapped(8, 10)?
    } else {
        GeneratorTable::standard()
    };
    let outcomes = oracle::run_all(&table, seed, n, samples);
    for o in &outcomes {
        println!("{}", oracle_line(o));
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{} (worst seed {})", o.name, o.worst_seed))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_ORACLE,
            format!("oracle failure: {}", failed.join(", ")),
        ))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze {
            state,
            pair,
            thresholds,
            out,
        } => run_analyze(&state, &pair, thresholds.thresholds(), out.as_deref()),
        Command::ValidatePair { pair, out } => run_validate(&pair, out.as_deref()),
        Command::Sweep {
            family,
            pair,
            grids,
            thresholds,
            out,
        } => run_sweep(
            family,
            &pair,
            &grids,
            thresholds.thresholds(),
            out.as_deref(),
        ),
        Command::Solve {
            mode,
            pair,
            r,
            s,
            seed,
            out,
        } => run_solve(
            mode,
            &pair,
            r.as_deref(),
            s.as_deref(),
            seed,
            out.as_deref(),
        ),
        Command::Realize { state, c, out } => run_realize(&state, c, out.as_deref()),
        Command::OracleCheck {
            seed,
            n,
            samples,
            misordered,
        } => run_oracles(seed, n, samples, misordered),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
