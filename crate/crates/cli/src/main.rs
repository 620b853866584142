//! `sigkit`: exact signature analysis of semicoherent systems.
//!
//! Subcommands: `signature`, `bp`, `compose`, `simulate`, `coherence`.
//! All outputs are JSON with rationals rendered as `"p"` or `"p/q"` strings;
//! identical requests produce byte-identical documents.
//!
//! Exit codes: 0 success, 1 input parse error, 2 validation error,
//! 3 oracle mismatch under `--check` (an internal inconsistency).

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sigkit_core::montecarlo::{simulate, LifetimeModel, SimConfig};
use sigkit_core::rational::to_f64;
use sigkit_core::signature::{
    boland_signature, coherence_conditions, tail_counting_oracle, tail_from_reflected,
};
use sigkit_core::{
    bp_owen, bp_shapley_oracle, ModularFile, MultiPoly, PathSetFile, RecurrentFile, Structure,
    TruthTableFile, UniPoly,
};

#[derive(Parser)]
#[command(name = "sigkit", version, about = "Exact system signature toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tail signature and signature from a structure function.
    Signature(SignatureArgs),
    /// Barlow-Proschan importance index.
    Bp(BpArgs),
    /// Compose a signature from an organizing structure and module signatures.
    Compose(ComposeArgs),
    /// Monte Carlo verification of signature and importance.
    Simulate(SimulateArgs),
    /// Coherence tests derived from the degree of the reliability polynomial.
    Coherence(CoherenceArgs),
}

/// Structure input: exactly one source. `--n` is mandatory with `--dsl`
/// and must agree with the file when both are present.
#[derive(Args)]
struct InputArgs {
    /// Structure formula, e.g. "x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4".
    #[arg(long, group = "source")]
    dsl: Option<String>,
    /// JSON file with {"n": ..., "minimal_path_sets": [[...], ...]}.
    #[arg(long, group = "source")]
    paths: Option<PathBuf>,
    /// JSON file with {"n": ..., "table": [0, 1, ...]} indexed by subset mask.
    #[arg(long, group = "source")]
    table: Option<PathBuf>,
    /// Component count (never inferred from variable indices).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct SignatureArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Re-derive the result through the counting and Boland oracles.
    #[arg(long)]
    check: bool,
    /// Append 15-digit decimal approximations.
    #[arg(long)]
    decimals: bool,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BpArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Re-derive the result through the Shapley subset-sum oracle.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    decimals: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComposeArgs {
    /// Modular input file; with --recurrent, the recurrent layout.
    #[arg(long)]
    modular: PathBuf,
    /// Treat the file as a recurrent system (identical modules).
    #[arg(long)]
    recurrent: bool,
    #[arg(long)]
    decimals: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lifetime model: "uniform" or "exp:RATE".
    #[arg(long, default_value = "uniform")]
    model: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoherenceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Parse(String),
    Validation(String),
    OracleMismatch,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::OracleMismatch => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::OracleMismatch => write!(f, "oracle mismatch: results disagree"),
        }
    }
}

impl From<sigkit_core::Error> for CliError {
    fn from(e: sigkit_core::Error) -> Self {
        if e.is_parse_error() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl InputArgs {
    fn load(&self) -> Result<Structure, CliError> {
        let consistent_n = |file_n: usize| -> Result<(), CliError> {
            match self.n {
                Some(n) if n != file_n => Err(CliError::Validation(format!(
                    "--n {n} disagrees with the file's n = {file_n}"
                ))),
                _ => Ok(()),
            }
        };
        match (&self.dsl, &self.paths, &self.table) {
            (Some(dsl), None, None) => {
                let n = self.n.ok_or_else(|| {
                    CliError::Validation("--n is required with --dsl".to_string())
                })?;
                Ok(Structure::parse(dsl, n)?)
            }
            (None, Some(path), None) => {
                let file: PathSetFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                consistent_n(file.n)?;
                Ok(file.to_structure()?)
            }
            (None, None, Some(path)) => {
                let file: TruthTableFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                consistent_n(file.n)?;
                Ok(file.to_structure()?)
            }
            _ => Err(CliError::Validation(
                "exactly one of --dsl, --paths, --table is required".to_string(),
            )),
        }
    }
}

fn require_semicoherent(s: &Structure) -> Result<(), CliError> {
    let report = s.semicoherence();
    if report.is_semicoherent() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "structure is not semicoherent (monotone: {}, zero at empty: {}, one at full: {})",
            report.monotone, report.zero_at_empty, report.one_at_full
        )))
    }
}

fn emit<T: Serialize>(doc: &T, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct SignatureDoc {
    n: usize,
    h: UniPoly,
    h_reflected: UniPoly,
    h_reflected_shifted: UniPoly,
    tail: sigkit_core::TailSignature,
    signature: sigkit_core::Signature,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimals: Option<SignatureDecimals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<SignatureChecks>,
}

#[derive(Serialize)]
struct SignatureDecimals {
    tail: Vec<String>,
    signature: Vec<String>,
}

#[derive(Serialize)]
struct SignatureChecks {
    counting_tail_match: bool,
    boland_signature_match: bool,
}

fn cmd_signature(args: &SignatureArgs) -> Result<(), CliError> {
    let s = args.input.load()?;
    require_semicoherent(&s)?;
    let n = s.n();
    let h = MultiPoly::reliability(&s)?.diagonal();
    let reflected = h.reflected(n)?;
    let shifted = reflected.taylor_shift(&sigkit_core::rational::int(1));
    let tail = tail_from_reflected(&reflected, n)?;
    let signature = tail.to_signature();

    let checks = if args.check {
        Some(SignatureChecks {
            counting_tail_match: tail_counting_oracle(&s)? == tail,
            boland_signature_match: boland_signature(&s)? == signature,
        })
    } else {
        None
    };

    let doc = SignatureDoc {
        n,
        h,
        h_reflected: reflected,
        h_reflected_shifted: shifted,
        decimals: args.decimals.then(|| SignatureDecimals {
            tail: tail.decimals(),
            signature: signature.decimals(),
        }),
        tail,
        signature,
        checks,
    };
    emit(&doc, args.out.as_ref())?;
    if let Some(c) = &doc.checks {
        if !(c.counting_tail_match && c.boland_signature_match) {
            return Err(CliError::OracleMismatch);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BpDoc {
    n: usize,
    bp: sigkit_core::BpIndex,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimals: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<BpChecks>,
}

#[derive(Serialize)]
struct BpChecks {
    shapley_match: bool,
}

fn cmd_bp(args: &BpArgs) -> Result<(), CliError> {
    let s = args.input.load()?;
    require_semicoherent(&s)?;
    let bp = bp_owen(&MultiPoly::reliability(&s)?);
    let checks = if args.check {
        Some(BpChecks {
            shapley_match: bp_shapley_oracle(&s)? == bp,
        })
    } else {
        None
    };
    let doc = BpDoc {
        n: s.n(),
        decimals: args.decimals.then(|| bp.decimals()),
        bp,
        checks,
    };
    emit(&doc, args.out.as_ref())?;
    if doc.checks.as_ref().is_some_and(|c| !c.shapley_match) {
        return Err(CliError::OracleMismatch);
    }
    Ok(())
}

#[derive(Serialize)]
struct ComposeDoc {
    n: usize,
    h_reflected: UniPoly,
    h_reflected_shifted: UniPoly,
    tail: sigkit_core::TailSignature,
    signature: sigkit_core::Signature,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimals: Option<SignatureDecimals>,
}

fn cmd_compose(args: &ComposeArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.modular)?;
    let (n, reflected) = if args.recurrent {
        let file: RecurrentFile = serde_json::from_str(&text)?;
        (file.n(), file.reflected()?)
    } else {
        let file: ModularFile = serde_json::from_str(&text)?;
        let system = file.to_system()?;
        (system.n(), system.compose_reflected()?)
    };
    let shifted = reflected.taylor_shift(&sigkit_core::rational::int(1));
    let tail = tail_from_reflected(&reflected, n)?;
    let signature = tail.to_signature();
    let doc = ComposeDoc {
        n,
        h_reflected: reflected,
        h_reflected_shifted: shifted,
        decimals: args.decimals.then(|| SignatureDecimals {
            tail: tail.decimals(),
            signature: signature.decimals(),
        }),
        tail,
        signature,
    };
    emit(&doc, args.out.as_ref())
}

#[derive(Serialize)]
struct SimulateDoc {
    #[serde(flatten)]
    report: sigkit_core::SimReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactBlock>,
}

#[derive(Serialize)]
struct ExactBlock {
    signature: Vec<String>,
    bp: Vec<String>,
    z_signature: Vec<f64>,
    z_bp: Vec<f64>,
}

fn parse_model(text: &str) -> Result<LifetimeModel, CliError> {
    if text == "uniform" {
        return Ok(LifetimeModel::Uniform01);
    }
    if let Some(rate_text) = text.strip_prefix("exp:") {
        let rate: f64 = rate_text
            .parse()
            .map_err(|_| CliError::Parse(format!("bad exponential rate {rate_text:?}")))?;
        return Ok(LifetimeModel::Exponential { rate });
    }
    Err(CliError::Validation(format!(
        "unknown model {text:?}, expected \"uniform\" or \"exp:RATE\""
    )))
}

fn z_scores(est: &[f64], se: &[f64], exact: &[f64]) -> Vec<f64> {
    est.iter()
        .zip(se)
        .zip(exact)
        .map(|((e, s), x)| {
            let diff = e - x;
            // A zero standard error means the tally was exact.
            if *s == 0.0 {
                0.0
            } else {
                diff / s
            }
        })
        .collect()
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let s = args.input.load()?;
    let cfg = SimConfig {
        trials: args.trials,
        seed: args.seed,
        lifetime_model: parse_model(&args.model)?,
    };
    let report = simulate(&s, &cfg)?;

    // Exact references are always computable here since simulation already
    // enumerated the truth table.
    let exact_sig = boland_signature(&s)?;
    let exact_bp = bp_shapley_oracle(&s)?;
    let sig_f64: Vec<f64> = exact_sig.values().iter().map(to_f64).collect();
    let bp_f64: Vec<f64> = exact_bp.values().iter().map(to_f64).collect();
    let exact = ExactBlock {
        signature: exact_sig.formatted(),
        bp: exact_bp.formatted(),
        z_signature: z_scores(&report.est_signature, &report.se_signature, &sig_f64),
        z_bp: z_scores(&report.est_bp, &report.se_bp, &bp_f64),
    };

    emit(
        &SimulateDoc {
            report,
            exact: Some(exact),
        },
        args.out.as_ref(),
    )
}

#[derive(Serialize)]
struct CoherenceDoc {
    n: usize,
    h_degree: usize,
    degree_is_n: bool,
    tail_condition: bool,
    signature_condition: bool,
    consistent: bool,
    certified_coherent: bool,
    relevant_components: Vec<u32>,
}

fn cmd_coherence(args: &CoherenceArgs) -> Result<(), CliError> {
    let s = args.input.load()?;
    require_semicoherent(&s)?;
    let h = MultiPoly::reliability(&s)?.diagonal();
    let report = coherence_conditions(&h, s.n())?;
    let relevant = s.relevant_components()?.iter().map(|c| c.get()).collect();
    let doc = CoherenceDoc {
        n: s.n(),
        h_degree: h.degree().unwrap_or(0),
        degree_is_n: report.degree_is_n,
        tail_condition: report.tail_condition,
        signature_condition: report.signature_condition,
        consistent: report.consistent(),
        certified_coherent: report.certifies_coherent(),
        relevant_components: relevant,
    };
    emit(&doc, args.out.as_ref())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Signature(args) => cmd_signature(args),
        Command::Bp(args) => cmd_bp(args),
        Command::Compose(args) => cmd_compose(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Coherence(args) => cmd_coherence(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sigkit: {e}");
            ExitCode::from(e.code())
        }
    }
}
