//! Command-line front end: evaluate separability criteria on a state, sweep
//! detection boundaries, bisect thresholds, and run randomized scans.
//!
//! Exit codes: 0 on success, 2 on validation errors (bad flags, unknown
//! names, malformed state files), 3 on numerical failures (non-convergence,
//! missing verdict brackets).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepcrit::analysis::{self, AnalysisError};
use sepcrit::criteria::{self, Criterion, CriterionError, CriterionResult, MatchingCriterion, PairCriterion};
use sepcrit::states::{self, DensityMatrix, StateError};
use sepcrit::LinalgError;

#[derive(Parser)]
#[command(
    name = "sepcrit",
    version,
    about = "Evaluate separability criteria on finite-dimensional density matrices",
    after_help = "State selectors:\n  \
        --state horodecki --a <v>        two-qutrit bound-entangled family\n  \
        --state noisy-singlet --p <v>    singlet mixed with a separable background\n  \
        --state max-entangled --d <v>    maximally entangled pair of qudits\n  \
        --state file:<path>              JSON file {\"dims\": [..], \"re\": [[..]], \"im\": [[..]]}\n  \
        --noise-p <v>                    additionally mix the state with white noise\n\n\
        Criteria: ccnr, witness, opt-witness, thm1, dv, prop3, thm2-pair, thm2-full, all"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate criteria on a single state and print the results
    Eval(EvalArgs),
    /// Write the three-curve detection-boundary CSV over the noise family
    Sweep(SweepArgs),
    /// Bisect the detection threshold of one criterion along a noise family
    Threshold(ThresholdArgs),
    /// Randomized hierarchy or false-positive scan over seeded states
    Randcheck(RandcheckArgs),
}

#[derive(Args)]
struct StateArgs {
    /// State selector (see --help for the list)
    #[arg(long)]
    state: String,
    /// Parameter a of the horodecki family, 0 < a < 1
    #[arg(long)]
    a: Option<f64>,
    /// Mixing weight p of the noisy-singlet family, 0 <= p <= 1
    #[arg(long)]
    p: Option<f64>,
    /// Local dimension d of the max-entangled state, d >= 2
    #[arg(long)]
    d: Option<usize>,
    /// Mix the selected state with white noise at this weight
    #[arg(long)]
    noise_p: Option<f64>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Comma-separated criterion names, or "all"
    #[arg(long, default_value = "all")]
    criteria: String,
    /// 1-based party pair for thm2-pair, e.g. "1,2"
    #[arg(long)]
    pair: Option<String>,
    /// 1-based perfect matching for thm2-full, e.g. "1:2,3:4"
    #[arg(long)]
    pairing: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.01)]
    a_min: f64,
    #[arg(long, default_value_t = 0.99)]
    a_max: f64,
    #[arg(long, default_value_t = 0.002)]
    a_step: f64,
    /// Bisection tolerance on the critical noise weight
    #[arg(long, default_value_t = 1e-4)]
    p_tol: f64,
    /// Output CSV file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Criterion name
    #[arg(long)]
    criterion: String,
    /// 1-based party pair for thm2-pair
    #[arg(long)]
    pair: Option<String>,
    /// 1-based perfect matching for thm2-full
    #[arg(long)]
    pairing: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    #[arg(long, default_value_t = 1.0)]
    hi: f64,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Random density matrices: the weaker tests must imply thm1
    Hierarchy,
    /// Random separable states: nothing may be detected
    Separable,
}

#[derive(Args)]
struct RandcheckArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Subsystem dimensions, e.g. "2x2" or "2x2x2x2"
    #[arg(long, default_value = "2x2")]
    dims: String,
    /// Number of pure product terms per separable sample
    #[arg(long, default_value_t = 8)]
    terms: usize,
    #[arg(long, default_value_t = 1234)]
    seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum CliError {
    /// Bad flags, unknown names, malformed inputs.
    Validation(String),
    /// SVD/eigensolver non-convergence, missing verdict brackets.
    Numerical(String),
}

impl CliError {
    fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Linalg(inner) => CliError::Numerical(inner.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CriterionError> for CliError {
    fn from(e: CriterionError) -> Self {
        match e {
            CriterionError::Linalg(inner) => CliError::Numerical(inner.to_string()),
            CriterionError::State(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::State(inner) => inner.into(),
            AnalysisError::Criterion(inner) => inner.into(),
            AnalysisError::BadTolerance(_) | AnalysisError::BadGrid => {
                CliError::Validation(e.to_string())
            }
            // Bracket and monotonicity failures are numerical outcomes.
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Randcheck(args) => run_randcheck(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Build the selected base state, before any white-noise mixing.
fn base_state(args: &StateArgs) -> Result<DensityMatrix, CliError> {
    match args.state.as_str() {
        "horodecki" => {
            let a = args
                .a
                .ok_or_else(|| CliError::validation("state 'horodecki' needs --a"))?;
            Ok(states::horodecki_3x3(a)?)
        }
        "noisy-singlet" => {
            let p = args
                .p
                .ok_or_else(|| CliError::validation("state 'noisy-singlet' needs --p"))?;
            Ok(states::noisy_singlet(p)?)
        }
        "max-entangled" => {
            let d = args
                .d
                .ok_or_else(|| CliError::validation("state 'max-entangled' needs --d"))?;
            Ok(states::max_entangled(d)?)
        }
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::validation(format!("cannot read state file '{path}': {e}"))
                })?;
                Ok(DensityMatrix::from_json(&text)?)
            }
            None => Err(CliError::validation(format!(
                "unknown state '{other}' (expected horodecki, noisy-singlet, max-entangled or file:<path>)"
            ))),
        },
    }
}

fn built_state(args: &StateArgs) -> Result<DensityMatrix, CliError> {
    let base = base_state(args)?;
    match args.noise_p {
        Some(p) => Ok(states::with_white_noise(&base, p)?),
        None => Ok(base),
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || CliError::validation(format!("cannot parse pair '{text}' (expected \"m,n\", 1-based)"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let m: usize = parts[0].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[1].trim().parse().map_err(|_| bad())?;
    if m == 0 || n == 0 {
        return Err(bad());
    }
    Ok((m - 1, n - 1))
}

fn parse_pairing(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|chunk| {
            let bad = || {
                CliError::validation(format!(
                    "cannot parse pairing '{text}' (expected \"m:n,m:n,...\", 1-based)"
                ))
            };
            let (m, n) = chunk.split_once(':').ok_or_else(bad)?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            if m == 0 || n == 0 {
                return Err(bad());
            }
            Ok((m - 1, n - 1))
        })
        .collect()
}

fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    let dims: Result<Vec<usize>, _> = text.split('x').map(|d| d.trim().parse::<usize>()).collect();
    match dims {
        Ok(dims) if !dims.is_empty() && !dims.contains(&0) => Ok(dims),
        _ => Err(CliError::validation(format!(
            "cannot parse dimensions '{text}' (expected e.g. \"2x2\" or \"2x2x2x2\")"
        ))),
    }
}

/// Resolve one criterion name, honoring --pair / --pairing for the
/// multipartite entries.
fn resolve_criterion(
    name: &str,
    pair: Option<(usize, usize)>,
    pairing: Option<Vec<(usize, usize)>>,
) -> Result<Box<dyn Criterion>, CliError> {
    match name {
        "thm2-pair" => Ok(Box::new(PairCriterion { pair })),
        "thm2-full" => Ok(Box::new(MatchingCriterion { pairing })),
        other => criteria::by_name(other).ok_or_else(|| {
            CliError::validation(format!(
                "unknown criterion '{other}' (expected one of {})",
                criteria::CRITERION_NAMES.join(", ")
            ))
        }),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::validation(format!("cannot write '{}': {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn results_to_csv(results: &[CriterionResult]) -> String {
    let mut csv = String::from("name,lhs,rhs,margin,detected\n");
    for r in results {
        let _ = writeln!(
            csv,
            "{},{:.12},{:.12},{:.12},{}",
            r.name, r.lhs, r.rhs, r.margin, r.detected
        );
    }
    csv
}

fn run_eval(args: EvalArgs) -> Result<(), CliError> {
    let rho = built_state(&args.state)?;
    let pair = args.pair.as_deref().map(parse_pair).transpose()?;
    let pairing = args.pairing.as_deref().map(parse_pairing).transpose()?;

    let results: Vec<CriterionResult> = if args.criteria == "all" {
        criteria::evaluate_all(&rho)?
    } else {
        let mut results = Vec::new();
        for name in args.criteria.split(',') {
            let criterion = resolve_criterion(name.trim(), pair, pairing.clone())?;
            results.push(criterion.evaluate(&rho)?);
        }
        results
    };

    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&results).expect("results serialize");
            s.push('\n');
            s
        }
        Format::Csv => results_to_csv(&results),
    };
    write_output(&args.out, &text)
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    if !args.a_step.is_finite() || args.a_step <= 0.0 {
        return Err(CliError::validation("a-step must be positive"));
    }
    let mut grid = Vec::new();
    let mut k = 0usize;
    loop {
        let a = args.a_min + args.a_step * k as f64;
        if a > args.a_max + 1e-12 {
            break;
        }
        grid.push(a);
        k += 1;
    }
    let csv = analysis::boundary_sweep_csv(&grid, args.p_tol)?;
    write_output(&args.out, &csv)
}

fn run_threshold(args: ThresholdArgs) -> Result<(), CliError> {
    if args.state.noise_p.is_some() {
        return Err(CliError::validation(
            "--noise-p conflicts with threshold's swept parameter p",
        ));
    }
    let pair = args.pair.as_deref().map(parse_pair).transpose()?;
    let pairing = args.pairing.as_deref().map(parse_pairing).transpose()?;
    let criterion = resolve_criterion(&args.criterion, pair, pairing)?;

    // The bisection parameter is the native p of noisy-singlet and the
    // white-noise weight for every other selector.
    let family: Box<dyn Fn(f64) -> Result<DensityMatrix, StateError>> =
        if args.state.state == "noisy-singlet" {
            Box::new(states::noisy_singlet)
        } else {
            let base = base_state(&args.state)?;
            Box::new(move |p| states::with_white_noise(&base, p))
        };

    let result = analysis::detection_threshold(
        family.as_ref(),
        criterion.as_ref(),
        "p",
        args.lo,
        args.hi,
        args.tol,
    )?;
    let mut text = serde_json::to_string_pretty(&result).expect("threshold serializes");
    text.push('\n');
    write_output(&args.out, &text)
}

fn run_randcheck(args: RandcheckArgs) -> Result<(), CliError> {
    let dims = parse_dims(&args.dims)?;
    let mut text = match args.kind {
        Kind::Hierarchy => {
            let report = analysis::hierarchy_check(args.samples, &dims, args.seed)?;
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
        Kind::Separable => {
            let report = analysis::false_positive_scan(args.samples, &dims, args.terms, args.seed)?;
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
    };
    text.push('\n');
    write_output(&args.out, &text)
}
