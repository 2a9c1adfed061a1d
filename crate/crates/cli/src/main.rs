//! Command-line driver for the shock-profile dynamics toolkit.
//!
//! Five subcommands wrap the library: `drift-verify` (closed-form drift
//! identities over an enumerated state set), `simulate` (absorption
//! trials), `tail` (power-law fit of a survival tail), `phase-scan`
//! (absorption behavior over a parameter grid), and `foster` (finite
//! drift-condition scans).
//!
//! Contract shared by all subcommands:
//! - exit 0 on success, 1 on usage errors, 2 when a verification fails,
//!   3 when the data cannot support the requested estimate;
//! - every output embeds the invocation that produced it (minus `--out`
//!   and `--threads`), and re-running that invocation reproduces the
//!   output byte for byte;
//! - rational parameter text such as `3/4` selects exact arithmetic
//!   where available; decimal text selects floats.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use shockline::analysis::{verify_drift, check_foster, FosterCriterion, Observable};
use shockline::config::enumerate_states;
use shockline::montecarlo::{batch, phase_scan, tail_fit, HittingStats, McError, SimMode};
use shockline::scalar::{ParsedScalar, Rational, Scalar};
use shockline::{Configuration, ModelParams};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_DATA: u8 = 3;

/// Exact and simulated diagnostics for shock-profile dynamics.
#[derive(Parser)]
#[command(name = "shockline", version, disable_help_subcommand = true)]
struct Cli {
    /// Worker threads for batch work. Results never depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the closed-form one-step drifts of both potentials against
    /// brute-force enumeration over every state within the given bounds.
    DriftVerify(DriftVerifyArgs),
    /// Run independent absorption trials and write the hitting-time
    /// statistics, including the survival table.
    Simulate(SimulateArgs),
    /// Fit a power-law exponent to a survival tail, from a stats file or
    /// an inline simulation.
    Tail(TailArgs),
    /// Scan a (p, beta) grid and report absorption behavior per cell.
    PhaseScan(PhaseScanArgs),
    /// Run a finite drift-condition scan for one observable and report
    /// the verdict with its exceptional set.
    Foster(FosterArgs),
}

/// Model parameters in text form. Rational text (`3/4`, `1`) is exact;
/// decimal text (`0.75`) selects float arithmetic.
#[derive(Args)]
struct ParamArgs {
    /// Copy-dynamics weight, in [0, 1].
    #[arg(long)]
    beta: String,
    /// Left-exchange probability, in (0, 1). Optional when --beta is 1
    /// (the exchange part is then inactive); defaults to 1/2.
    #[arg(long)]
    p: Option<String>,
}

#[derive(Args)]
struct DriftVerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Largest state size included in the scan.
    #[arg(long, default_value_t = 16)]
    max_size: u64,
    /// Largest block count included in the scan.
    #[arg(long, default_value_t = 4)]
    max_blocks: usize,
    /// Residual tolerance in float mode. Exact mode requires literal
    /// zeros regardless of this value.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Starting state in block text, e.g. "2:1,1:2".
    #[arg(long)]
    config: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Step cap (discrete/quadrant) or time cap (continuous).
    #[arg(long, default_value_t = 100_000.0)]
    cap: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Discrete)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TailArgs {
    /// Stats file written by `simulate --format json`. Replaces the
    /// inline simulation flags.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Copy-dynamics weight (inline simulation only).
    #[arg(long)]
    beta: Option<String>,
    /// Left-exchange probability (inline simulation only).
    #[arg(long)]
    p: Option<String>,
    /// Starting state in block text (inline simulation only).
    #[arg(long)]
    config: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 100_000.0)]
    cap: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Discrete)]
    mode: ModeArg,
    /// Fit window as two times: LO HI. Must end below the cap.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], required = true)]
    window: Vec<f64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhaseScanArgs {
    /// p grid as "lo:hi:count" (inclusive, evenly spaced).
    #[arg(long, default_value = "0.1:0.9:9")]
    p_grid: String,
    /// beta grid as "lo:hi:count" (inclusive, evenly spaced).
    #[arg(long, default_value = "0.1:0.9:9")]
    beta_grid: String,
    /// Starting state in block text.
    #[arg(long, default_value = "1:1")]
    config: String,
    #[arg(long, default_value_t = 2_000)]
    trials: u64,
    /// Step cap per trial.
    #[arg(long, default_value_t = 20_000)]
    cap: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FosterArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Observable: f1, f2, phi:ALPHA (f2 to the power ALPHA), or
    /// psi:ALPHA (f1 to the power -ALPHA).
    #[arg(long = "fn")]
    function: String,
    /// Drift condition: erg, rec, tr1 (sublevel transience), tr2
    /// (bounded-jump transience), or mom (moment bound).
    #[arg(long)]
    criterion: String,
    /// Scan every state of size up to this bound.
    #[arg(long, default_value_t = 20)]
    bound: u64,
    /// Output path; stdout when omitted. Always JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Discrete,
    Continuous,
    Quadrant,
}

impl ModeArg {
    fn to_sim(self) -> SimMode {
        match self {
            ModeArg::Discrete => SimMode::Discrete,
            ModeArg::Continuous => SimMode::Continuous,
            ModeArg::Quadrant => SimMode::Quadrant,
        }
    }

    fn text(self) -> &'static str {
        match self {
            ModeArg::Discrete => "discrete",
            ModeArg::Continuous => "continuous",
            ModeArg::Quadrant => "quadrant",
        }
    }
}

/// Error carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: message.into() }
}

fn from_mc(e: McError) -> CliError {
    let code = match e {
        McError::BadWindow(_) | McError::InsufficientData(_) => EXIT_DATA,
        _ => EXIT_USAGE,
    };
    CliError { code, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs, not usage errors.
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_USAGE) };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = shockline::parallel::configure_threads(n) {
            eprintln!("error: --threads {n}: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        Command::DriftVerify(args) => cmd_drift_verify(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Tail(args) => cmd_tail(args),
        Command::PhaseScan(args) => cmd_phase_scan(args),
        Command::Foster(args) => cmd_foster(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Writes `content` to `--out` or stdout.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Joins tokens into the canonical invocation recorded in every output.
/// `--out` and `--threads` are deliberately absent: they change where and
/// how fast the output is produced, never what it contains.
fn invocation(tokens: &[&str]) -> String {
    let mut s = String::from("shockline");
    for t in tokens {
        s.push(' ');
        s.push_str(t);
    }
    s
}

/// Model parameters with the arithmetic mode chosen by their text form.
enum ParamMode {
    Exact(ModelParams<Rational>),
    Float(ModelParams<f64>),
}

/// Parses `--beta`/`--p`, applying the beta=1 default for a missing p.
/// Returns the parameters and the canonical (beta, p) text to embed.
fn parse_params(beta: &str, p: Option<&str>) -> Result<(ParamMode, String, String), CliError> {
    let beta_text = beta.trim().to_string();
    let beta_val = ParsedScalar::parse(&beta_text)
        .ok_or_else(|| usage(format!("cannot parse --beta {beta_text:?}")))?;
    let p_text = match p {
        Some(text) => text.trim().to_string(),
        None => {
            let is_one = match beta_val {
                ParsedScalar::Exact(r) => r == Rational::from_int(1),
                ParsedScalar::Float(v) => v == 1.0,
            };
            if !is_one {
                return Err(usage("--p is required unless --beta is 1"));
            }
            "1/2".to_string()
        }
    };
    let p_val = ParsedScalar::parse(&p_text)
        .ok_or_else(|| usage(format!("cannot parse --p {p_text:?}")))?;
    let mode = match (beta_val, p_val) {
        (ParsedScalar::Exact(b), ParsedScalar::Exact(p)) => {
            ParamMode::Exact(ModelParams::new(b, p).map_err(|e| usage(e.to_string()))?)
        }
        (b, p) => ParamMode::Float(
            ModelParams::new(b.to_f64(), p.to_f64()).map_err(|e| usage(e.to_string()))?,
        ),
    };
    Ok((mode, beta_text, p_text))
}

/// Float parameters for commands that do not have an exact mode.
fn parse_params_f64(beta: &str, p: Option<&str>) -> Result<(ModelParams<f64>, String, String), CliError> {
    let (mode, beta_text, p_text) = parse_params(beta, p)?;
    let params = match mode {
        ParamMode::Float(params) => params,
        ParamMode::Exact(exact) => {
            ModelParams::new(exact.beta().to_f64(), exact.p().to_f64())
                .map_err(|e| usage(e.to_string()))?
        }
    };
    Ok((params, beta_text, p_text))
}

fn parse_config(text: &str) -> Result<Configuration, CliError> {
    text.trim()
        .parse::<Configuration>()
        .map_err(|e| usage(format!("cannot parse --config {:?}: {e}", text.trim())))
}

// ---------------------------------------------------------------------
// drift-verify

/// One state row of the drift report. Scalar fields are text so exact
/// rationals survive serialization unchanged.
#[derive(Serialize)]
struct DriftRow {
    config: String,
    n_blocks: usize,
    size: u64,
    drift_f1: String,
    formula_f1: String,
    residual_f1: String,
    drift_f2: String,
    formula_f2: String,
    residual_f2: String,
    second_moment_f1: String,
    second_moment_f2: String,
}

#[derive(Serialize)]
struct DriftOutput {
    invocation: String,
    arithmetic: &'static str,
    /// Float-mode residual tolerance; null in exact mode (which demands
    /// literal zeros).
    tolerance: Option<f64>,
    states: usize,
    all_within: bool,
    rows: Vec<DriftRow>,
}

fn drift_rows<S: Scalar>(
    states: &[Configuration],
    params: &ModelParams<S>,
    tol: f64,
) -> Result<(Vec<DriftRow>, bool), CliError> {
    let reports = verify_drift(states, params).map_err(|e| usage(e.to_string()))?;
    let mut all_within = true;
    let rows = reports
        .iter()
        .map(|r| {
            all_within &= r.within(tol);
            DriftRow {
                config: r.config.to_string(),
                n_blocks: r.config.n_blocks(),
                size: r.config.size(),
                drift_f1: r.drift_f1.to_string(),
                formula_f1: r.formula_f1.to_string(),
                residual_f1: r.residual_f1.to_string(),
                drift_f2: r.drift_f2.to_string(),
                formula_f2: r.formula_f2.to_string(),
                residual_f2: r.residual_f2.to_string(),
                second_moment_f1: r.second_moment_f1.to_string(),
                second_moment_f2: r.second_moment_f2.to_string(),
            }
        })
        .collect();
    Ok((rows, all_within))
}

fn cmd_drift_verify(args: DriftVerifyArgs) -> Result<(), CliError> {
    let (mode, beta_text, p_text) = parse_params(&args.params.beta, args.params.p.as_deref())?;
    if args.max_size == 0 {
        return Err(usage("--max-size must be at least 1"));
    }
    let states = enumerate_states(args.max_size, args.max_blocks);
    let max_size = args.max_size.to_string();
    let max_blocks = args.max_blocks.to_string();
    let tol_text = args.tol.to_string();
    let inv = invocation(&[
        "drift-verify",
        "--beta", &beta_text,
        "--p", &p_text,
        "--max-size", &max_size,
        "--max-blocks", &max_blocks,
        "--tol", &tol_text,
        "--format", if args.format == Format::Csv { "csv" } else { "json" },
    ]);
    let (arithmetic, tolerance, rows, all_within) = match &mode {
        ParamMode::Exact(params) => {
            let (rows, ok) = drift_rows(&states, params, 0.0)?;
            ("exact", None, rows, ok)
        }
        ParamMode::Float(params) => {
            let (rows, ok) = drift_rows(&states, params, args.tol)?;
            ("float", Some(args.tol), rows, ok)
        }
    };
    let output = DriftOutput {
        invocation: inv,
        arithmetic,
        tolerance,
        states: states.len(),
        all_within,
        rows,
    };
    let content = match args.format {
        Format::Json => to_json(&output)?,
        Format::Csv => {
            let mut head = String::new();
            push_comment(&mut head, "invocation", &output.invocation);
            push_comment(&mut head, "arithmetic", output.arithmetic);
            match output.tolerance {
                Some(t) => push_comment(&mut head, "tolerance", &t.to_string()),
                None => push_comment(&mut head, "tolerance", "exact-zero"),
            }
            push_comment(&mut head, "states", &output.states.to_string());
            push_comment(&mut head, "all_within", &output.all_within.to_string());
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "config", "n_blocks", "size",
                "drift_f1", "formula_f1", "residual_f1",
                "drift_f2", "formula_f2", "residual_f2",
                "second_moment_f1", "second_moment_f2",
            ])
            .and_then(|_| {
                output.rows.iter().try_for_each(|r| {
                    w.write_record([
                        r.config.as_str(),
                        &r.n_blocks.to_string(),
                        &r.size.to_string(),
                        &r.drift_f1, &r.formula_f1, &r.residual_f1,
                        &r.drift_f2, &r.formula_f2, &r.residual_f2,
                        &r.second_moment_f1, &r.second_moment_f2,
                    ])
                })
            })
            .map_err(|e| usage(format!("csv: {e}")))?;
            finish_csv(head, w)?
        }
    };
    emit(&args.out, &content)?;
    eprintln!(
        "drift-verify: {} states, {} arithmetic, {}",
        output.states,
        output.arithmetic,
        if output.all_within { "all residuals within tolerance" } else { "RESIDUAL VIOLATION" }
    );
    if output.all_within {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_VERIFY,
            message: "drift residuals exceed the tolerance (see report rows)".into(),
        })
    }
}

// ---------------------------------------------------------------------
// simulate

#[derive(Serialize, Deserialize)]
struct SimulateOutput {
    invocation: String,
    beta: String,
    p: String,
    config: String,
    mode: String,
    trials: u64,
    cap: f64,
    seed: u64,
    hit_fraction: f64,
    censored_fraction: f64,
    mean_capped: f64,
    mean_capped_stderr: f64,
    stats: HittingStats,
}

fn run_batch(
    beta: &str,
    p: Option<&str>,
    config: &str,
    trials: u64,
    cap: f64,
    seed: u64,
    mode: ModeArg,
    format: Format,
) -> Result<SimulateOutput, CliError> {
    let (params, beta_text, p_text) = parse_params_f64(beta, p)?;
    let s0 = parse_config(config)?;
    let stats = batch(&s0, &params, trials, cap, seed, mode.to_sim()).map_err(from_mc)?;
    let (mean, stderr) = stats.mean_capped();
    let trials_text = trials.to_string();
    let cap_text = cap.to_string();
    let seed_text = seed.to_string();
    let inv = invocation(&[
        "simulate",
        "--beta", &beta_text,
        "--p", &p_text,
        "--config", &s0.to_string(),
        "--trials", &trials_text,
        "--cap", &cap_text,
        "--seed", &seed_text,
        "--mode", mode.text(),
        "--format", if format == Format::Csv { "csv" } else { "json" },
    ]);
    Ok(SimulateOutput {
        invocation: inv,
        beta: beta_text,
        p: p_text,
        config: s0.to_string(),
        mode: mode.text().to_string(),
        trials,
        cap,
        seed,
        hit_fraction: stats.n_uncensored() as f64 / stats.n_trials as f64,
        censored_fraction: stats.n_censored as f64 / stats.n_trials as f64,
        mean_capped: mean,
        mean_capped_stderr: stderr,
        stats,
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let output = run_batch(
        &args.params.beta,
        args.params.p.as_deref(),
        &args.config,
        args.trials,
        args.cap,
        args.seed,
        args.mode,
        args.format,
    )?;
    let content = match args.format {
        Format::Json => to_json(&output)?,
        Format::Csv => {
            let mut head = String::new();
            push_comment(&mut head, "invocation", &output.invocation);
            push_comment(&mut head, "trials", &output.trials.to_string());
            push_comment(&mut head, "cap", &output.cap.to_string());
            push_comment(&mut head, "seed", &output.seed.to_string());
            push_comment(&mut head, "hit_fraction", &output.hit_fraction.to_string());
            push_comment(&mut head, "censored_fraction", &output.censored_fraction.to_string());
            push_comment(&mut head, "mean_capped", &output.mean_capped.to_string());
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["t", "survival"])
                .and_then(|_| {
                    output.stats.survival.iter().try_for_each(|(t, s)| {
                        w.write_record([t.to_string(), s.to_string()])
                    })
                })
                .map_err(|e| usage(format!("csv: {e}")))?;
            finish_csv(head, w)?
        }
    };
    emit(&args.out, &content)?;
    eprintln!(
        "simulate: {} trials from {}, hit fraction {:.4}, mean capped {:.3}",
        output.trials, output.config, output.hit_fraction, output.mean_capped
    );
    Ok(())
}

// ---------------------------------------------------------------------
// tail

#[derive(Serialize)]
struct TailOutput {
    invocation: String,
    source: String,
    window: (f64, f64),
    slope: f64,
    stderr: f64,
    n_points: usize,
    /// Largest sub-window of the fit window where every survival value
    /// is backed by at least 100 surviving trials — the region where
    /// curvature can be judged rather than counting noise.
    assessed_window: Option<(f64, f64)>,
    /// Slopes over the two geometric halves of the assessed window.
    half_slopes: Option<(f64, f64)>,
    /// False when the tail visibly steepens or flattens across the
    /// assessed window (half slopes differing by more than 0.5, beyond
    /// three combined standard errors); true when one slope fits the
    /// whole assessed window; null when the well-resolved region is too
    /// narrow to judge. A clean power law keeps one slope throughout.
    power_law_like: Option<bool>,
}

fn cmd_tail(args: TailArgs) -> Result<(), CliError> {
    let window = (args.window[0], args.window[1]);
    let window_lo = window.0.to_string();
    let window_hi = window.1.to_string();
    let (stats, inv, source) = match &args.stats {
        Some(path) => {
            if args.beta.is_some() || args.p.is_some() || args.config.is_some() {
                return Err(usage("--stats replaces the inline simulation flags"));
            }
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let sim: SimulateOutput = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{} is not a simulate JSON file: {e}", path.display())))?;
            let inv = invocation(&[
                "tail",
                "--stats", &path.display().to_string(),
                "--window", &window_lo, &window_hi,
            ]);
            (sim.stats, inv, "file".to_string())
        }
        None => {
            let beta = args
                .beta
                .as_deref()
                .ok_or_else(|| usage("either --stats or --beta/--config is required"))?;
            let config = args
                .config
                .as_deref()
                .ok_or_else(|| usage("--config is required for an inline tail fit"))?;
            let sim = run_batch(
                beta,
                args.p.as_deref(),
                config,
                args.trials,
                args.cap,
                args.seed,
                args.mode,
                Format::Json,
            )?;
            let trials_text = args.trials.to_string();
            let cap_text = args.cap.to_string();
            let seed_text = args.seed.to_string();
            let inv = invocation(&[
                "tail",
                "--beta", &sim.beta,
                "--p", &sim.p,
                "--config", &sim.config,
                "--trials", &trials_text,
                "--cap", &cap_text,
                "--seed", &seed_text,
                "--mode", args.mode.text(),
                "--window", &window_lo, &window_hi,
            ]);
            (sim.stats, inv, "inline".to_string())
        }
    };
    let fit = tail_fit(&stats, window).map_err(from_mc)?;
    // Judge curvature only where survival rests on >= 100 events; below
    // that, half-window slopes are counting noise with a deceptively
    // small standard error.
    let solid_floor = 100.0 / stats.n_trials as f64;
    let t_solid = stats
        .survival
        .iter()
        .rev()
        .find(|(_, s)| *s >= solid_floor)
        .map(|(t, _)| t.min(window.1));
    let assessed = t_solid.filter(|hi| *hi >= 4.0 * window.0).map(|hi| (window.0, hi));
    let (halves, power_law_like) = match assessed {
        None => (None, None),
        Some((lo, hi)) => {
            let mid = (lo * hi).sqrt();
            match (tail_fit(&stats, (lo, mid)), tail_fit(&stats, (mid, hi))) {
                (Ok(a), Ok(b)) => {
                    let diff = (a.slope - b.slope).abs();
                    let significance =
                        3.0 * (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
                    (Some((a.slope, b.slope)), Some(!(diff > 0.5 && diff > significance)))
                }
                _ => (None, None),
            }
        }
    };
    let output = TailOutput {
        invocation: inv,
        source,
        window,
        slope: fit.slope,
        stderr: fit.stderr,
        n_points: fit.n_points,
        assessed_window: assessed,
        half_slopes: halves,
        power_law_like,
    };
    let content = to_json(&output)?;
    emit(&args.out, &content)?;
    eprintln!(
        "tail: slope {:.4} +- {:.4} over [{}, {}], {}",
        output.slope,
        output.stderr,
        window.0,
        window.1,
        match output.power_law_like {
            Some(true) => "power-law-like",
            Some(false) => "NOT power-law-like",
            None => "curvature not assessable at this sample size",
        }
    );
    Ok(())
}

// ---------------------------------------------------------------------
// phase-scan

#[derive(Serialize)]
struct PhaseScanOutput {
    invocation: String,
    config: String,
    trials: u64,
    cap: u64,
    seed: u64,
    cells: Vec<shockline::montecarlo::PhaseCell>,
}

/// Parses "lo:hi:count" into an inclusive evenly spaced grid.
fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let err = || usage(format!("grid must be \"lo:hi:count\", got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let lo: f64 = parts[0].parse().map_err(|_| err())?;
    let hi: f64 = parts[1].parse().map_err(|_| err())?;
    let count: usize = parts[2].parse().map_err(|_| err())?;
    if count == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(err());
    }
    if count == 1 {
        if lo != hi {
            return Err(usage(format!("a single-point grid needs lo == hi, got {text:?}")));
        }
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            // Interpolate so both endpoints are exact, then snap away
            // float dust (grids are human-scale; 1e-9 is far below any
            // meaningful resolution).
            let v = lo * (1.0 - t) + hi * t;
            (v * 1e9).round() / 1e9
        })
        .collect())
}

fn cmd_phase_scan(args: PhaseScanArgs) -> Result<(), CliError> {
    let ps = parse_grid(&args.p_grid)?;
    let betas = parse_grid(&args.beta_grid)?;
    let s0 = parse_config(&args.config)?;
    let cells = phase_scan(&ps, &betas, &s0, args.trials, args.cap, args.seed).map_err(from_mc)?;
    let trials_text = args.trials.to_string();
    let cap_text = args.cap.to_string();
    let seed_text = args.seed.to_string();
    let inv = invocation(&[
        "phase-scan",
        "--p-grid", args.p_grid.trim(),
        "--beta-grid", args.beta_grid.trim(),
        "--config", &s0.to_string(),
        "--trials", &trials_text,
        "--cap", &cap_text,
        "--seed", &seed_text,
        "--format", if args.format == Format::Csv { "csv" } else { "json" },
    ]);
    let output = PhaseScanOutput {
        invocation: inv,
        config: s0.to_string(),
        trials: args.trials,
        cap: args.cap,
        seed: args.seed,
        cells,
    };
    let content = match args.format {
        Format::Json => to_json(&output)?,
        Format::Csv => {
            let mut head = String::new();
            push_comment(&mut head, "invocation", &output.invocation);
            push_comment(&mut head, "config", &output.config);
            push_comment(&mut head, "trials", &output.trials.to_string());
            push_comment(&mut head, "cap", &output.cap.to_string());
            push_comment(&mut head, "seed", &output.seed.to_string());
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "beta", "hit_fraction", "censored_fraction", "mean_f1_slope"])
                .and_then(|_| {
                    output.cells.iter().try_for_each(|c| {
                        w.write_record([
                            c.p.to_string(),
                            c.beta.to_string(),
                            c.hit_fraction.to_string(),
                            c.censored_fraction.to_string(),
                            c.mean_f1_slope.map(|v| v.to_string()).unwrap_or_default(),
                        ])
                    })
                })
                .map_err(|e| usage(format!("csv: {e}")))?;
            finish_csv(head, w)?
        }
    };
    emit(&args.out, &content)?;
    eprintln!(
        "phase-scan: {} cells ({} x {}), {} trials each",
        output.cells.len(),
        ps.len(),
        betas.len(),
        output.trials
    );
    Ok(())
}

// ---------------------------------------------------------------------
// foster

#[derive(Serialize)]
struct JumpsOutput {
    max_abs_head: f64,
    max_abs_tail: f64,
    bounded: bool,
}

/// How many exceptional states are listed verbatim; beyond this only the
/// count is reported (scans can produce hundreds of thousands).
const EXCEPTIONAL_LISTED: usize = 64;

#[derive(Serialize)]
struct FosterOutput {
    invocation: String,
    beta: f64,
    p: f64,
    function: String,
    criterion: String,
    bound: u64,
    scanned: String,
    states_scanned: u64,
    verdict: String,
    exceptional_count: usize,
    /// First states (in scan order) failing the drift condition.
    exceptional: Vec<String>,
    exceptional_truncated: bool,
    tail_exceptional: u64,
    tail_states: u64,
    margin_min: Option<f64>,
    margin_max: Option<f64>,
    jumps: Option<JumpsOutput>,
    sublevel_witness: Option<bool>,
}

fn parse_observable(text: &str) -> Result<Observable, CliError> {
    let text = text.trim();
    if let Some(alpha) = text.strip_prefix("phi:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| usage(format!("cannot parse exponent in --fn {text:?}")))?;
        if !(alpha > 0.0) {
            return Err(usage("phi exponent must be positive"));
        }
        return Ok(Observable::PowerOfF2(alpha));
    }
    if let Some(alpha) = text.strip_prefix("psi:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| usage(format!("cannot parse exponent in --fn {text:?}")))?;
        if !(alpha > 0.0) {
            return Err(usage("psi exponent must be positive"));
        }
        return Ok(Observable::NegPowerOfF1(alpha));
    }
    match text {
        "f1" => Ok(Observable::F1),
        "f2" => Ok(Observable::F2),
        _ => Err(usage(format!(
            "--fn must be f1, f2, phi:ALPHA, or psi:ALPHA, got {text:?}"
        ))),
    }
}

fn parse_criterion(text: &str) -> Result<FosterCriterion, CliError> {
    match text.trim() {
        "erg" => Ok(FosterCriterion::Ergodic),
        "rec" => Ok(FosterCriterion::Recurrent),
        "tr1" => Ok(FosterCriterion::TransientSublevel),
        "tr2" => Ok(FosterCriterion::TransientBoundedJump),
        "mom" => Ok(FosterCriterion::Moment),
        other => Err(usage(format!(
            "--criterion must be erg, rec, tr1, tr2, or mom, got {other:?}"
        ))),
    }
}

fn cmd_foster(args: FosterArgs) -> Result<(), CliError> {
    let (params, beta_text, p_text) = parse_params_f64(&args.params.beta, args.params.p.as_deref())?;
    let observable = parse_observable(&args.function)?;
    let criterion = parse_criterion(&args.criterion)?;
    let report = check_foster(&params, &observable, args.bound, criterion)
        .map_err(|e| usage(e.to_string()))?;
    let bound_text = args.bound.to_string();
    let inv = invocation(&[
        "foster",
        "--beta", &beta_text,
        "--p", &p_text,
        "--fn", args.function.trim(),
        "--criterion", args.criterion.trim(),
        "--bound", &bound_text,
    ]);
    let exceptional_count = report.exceptional.len();
    let listed: Vec<String> =
        report.exceptional.iter().take(EXCEPTIONAL_LISTED).cloned().collect();
    let output = FosterOutput {
        invocation: inv,
        beta: report.beta,
        p: report.p,
        function: report.observable.clone(),
        criterion: args.criterion.trim().to_string(),
        bound: report.bound,
        scanned: report.scanned.clone(),
        states_scanned: report.states_scanned,
        verdict: report.verdict.label().to_string(),
        exceptional_count,
        exceptional_truncated: exceptional_count > listed.len(),
        exceptional: listed,
        tail_exceptional: report.tail_exceptional,
        tail_states: report.tail_states,
        margin_min: report.margin_min,
        margin_max: report.margin_max,
        jumps: report.jumps.map(|j| JumpsOutput {
            max_abs_head: j.max_abs_head,
            max_abs_tail: j.max_abs_tail,
            bounded: j.bounded,
        }),
        sublevel_witness: report.sublevel_witness,
    };
    let content = to_json(&output)?;
    emit(&args.out, &content)?;
    eprintln!(
        "foster: {} over {} states (bound {}), verdict {}",
        output.function, output.states_scanned, output.bound, output.verdict
    );
    Ok(())
}

// ---------------------------------------------------------------------
// shared serialization helpers

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| usage(format!("json: {e}")))
}

fn push_comment(buf: &mut String, key: &str, value: &str) {
    buf.push_str("# ");
    buf.push_str(key);
    buf.push_str(": ");
    buf.push_str(value);
    buf.push('\n');
}

fn finish_csv(head: String, writer: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let body = writer
        .into_inner()
        .map_err(|e| usage(format!("csv: {e}")))
        .and_then(|v| String::from_utf8(v).map_err(|e| usage(format!("csv: {e}"))))?;
    Ok(head + &body)
}
