//! Command-line front end: `analyze`, `sweep`, `verify`, `threshold`.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 invalid state or
//! parameters, 3 verification failure, 4 no detection.

pub mod document;
pub mod report;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use geosteer::criteria::{critical_noise, Criterion};
use geosteer::families::{FamilyKind, ParamRange, SweepGrid};
use thiserror::Error;

pub use document::StateDocument;
pub use report::AnalysisReport;
pub use verify::{run_verification, Level, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Io = 1,
    Validation = 2,
    VerificationFailed = 3,
    NoDetection = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] geosteer::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Io(_) | CliError::Parse(_) => ExitCode::Io,
            CliError::Usage(_) => ExitCode::Validation,
            CliError::Core(geosteer::Error::NoDetection { .. }) => ExitCode::NoDetection,
            CliError::Core(_) => ExitCode::Validation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "geosteer", version, about = "Geometric steering, entanglement and Bell criteria for two-qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the correlation tensor, its singular values and all verdicts.
    Analyze(AnalyzeArgs),
    /// Evaluate a built-in family over a parameter grid (CSV output).
    Sweep(SweepArgs),
    /// Run the numerical identity checks.
    Verify(VerifyArgs),
    /// Locate the critical noise parameter of a built-in family.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Built-in family: werner | noisy-schmidt.
    #[arg(long)]
    pub family: Option<String>,
    /// Shape parameter of noisy-schmidt, in [0, π].
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// State document (JSON) to analyze.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Noise parameter for --family.
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Parameter range `name=start:end:count` for `v` or `alpha`; repeatable.
    #[arg(long = "grid", required = true)]
    pub grid: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub level: Level,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// entanglement | steering | bell | chsh.
    #[arg(long)]
    pub criterion: String,
}

fn family_kind(args: &FamilyArgs) -> Result<FamilyKind, CliError> {
    let name = args.family.as_deref().ok_or_else(|| CliError::Usage("--family is required".into()))?;
    FamilyKind::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown family '{name}' (werner | noisy-schmidt)")))
}

fn parse_range(spec: &str) -> Result<(String, ParamRange), CliError> {
    let bad = || CliError::Usage(format!("grid '{spec}' is not of the form name=start:end:count"));
    let (name, rest) = spec.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((name.trim().to_string(), ParamRange::new(start, end, count)?))
}

fn family_label(kind: FamilyKind, alpha: Option<f64>, v: f64) -> String {
    match (kind, alpha) {
        (FamilyKind::NoisySchmidt, Some(a)) => format!("{}(alpha={a}, v={v})", kind.name()),
        _ => format!("{}(v={v})", kind.name()),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    let report = match (&args.input, &args.family.family) {
        (Some(path), _) => {
            let doc = StateDocument::read(path)?;
            let label = doc.label.clone().unwrap_or_else(|| path.display().to_string());
            AnalysisReport::analyze(&doc.to_state()?, label)?
        }
        (None, Some(_)) => {
            let kind = family_kind(&args.family)?;
            let v = args.v.ok_or_else(|| CliError::Usage("--v is required with --family".into()))?;
            let state = kind.state(args.family.alpha, v)?;
            AnalysisReport::analyze(&state, family_label(kind, args.family.alpha, v))?
        }
        (None, None) => return Err(CliError::Usage("either --input or --family is required".into())),
    };
    let mut text = report.to_json();
    text.push('\n');
    write_output(&args.out, &text, stdout)?;
    Ok(ExitCode::Success)
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    let kind = family_kind(&args.family)?;
    let mut v = None;
    let mut alpha = args.family.alpha.map(ParamRange::single);
    for spec in &args.grid {
        match parse_range(spec)? {
            (name, range) if name == "v" => v = Some(range),
            (name, range) if name == "alpha" => alpha = Some(range),
            (name, _) => return Err(CliError::Usage(format!("unknown grid parameter '{name}'"))),
        }
    }
    let v = v.ok_or_else(|| CliError::Usage("a v grid is required (--grid v=start:end:count)".into()))?;
    let records = geosteer::families::sweep(kind, &SweepGrid { alpha, v })?;
    let mut buf = Vec::new();
    table::write_table(&records, &mut buf)?;
    write_output(&args.out, &String::from_utf8(buf).expect("csv is utf-8"), stdout)?;
    Ok(ExitCode::Success)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    let report = run_verification(args.level, args.seed, args.inject_fault)?;
    stdout.write_all(report.render().as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(if report.all_passed() { ExitCode::Success } else { ExitCode::VerificationFailed })
}

pub fn cmd_threshold(args: &ThresholdArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    let kind = family_kind(&args.family)?;
    let criterion = Criterion::from_short_name(&args.criterion).ok_or_else(|| {
        CliError::Usage(format!("unknown criterion '{}' (entanglement | steering | bell | chsh)", args.criterion))
    })?;
    let family = kind.family(args.family.alpha)?;
    let line = match critical_noise(family.as_ref(), criterion) {
        Ok(v) => format!("{v:.10}\n"),
        Err(geosteer::Error::NoDetection { .. }) => {
            stdout.write_all(b"none\n").map_err(|e| CliError::Io(e.to_string()))?;
            return Ok(ExitCode::NoDetection);
        }
        Err(e) => return Err(e.into()),
    };
    stdout.write_all(line.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(ExitCode::Success)
}

/// Parses `args` and runs the command; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    ExitCode::Success
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    ExitCode::Io
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Threshold(a) => cmd_threshold(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "geosteer: {e}");
            e.exit_code()
        }
    }
}
