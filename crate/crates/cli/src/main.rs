use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{Map, Value};
use swalg::suite::{
    render_text, round_floats, run_suite, summary_json, OutputFormat, RunConfig, SuiteName,
    SuiteReport,
};
use swalg::{Error, Half};

const OUT_DIR_ENV: &str = "SWALG_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "swalg-out";

#[derive(Parser, Debug)]
#[command(
    name = "swalg",
    version,
    about = "Oscillator / Smorodinsky-Winternitz verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Levels and degeneracies up to --n-max.
    Spectrum,
    /// Quantum-number lists up to --n-max.
    Enumerate,
    /// Exact commutation relations of the boson algebra.
    VerifyAlgebra,
    /// Orthonormality and eigen-residuals of the oscillator basis.
    VerifyBasis,
    /// Reduction to the SW system: factor, norms, residuals, spectrum.
    VerifyReduction,
    /// Matrix-element oracle grid (D = 2).
    VerifyMatrixElements,
    /// Spectrum and matrix-element tables.
    Export,
    /// Every verification suite in dependency order.
    All,
}

#[derive(clap::Args, Debug, Default)]
struct Flags {
    /// Half the number of Cartesian dimensions (default 2).
    #[arg(long = "D", global = true)]
    d: Option<usize>,
    /// SW frequency (default 1).
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Highest level N (default 4).
    #[arg(long, global = true)]
    n_max: Option<u32>,
    /// Gauss-Laguerre order in z = R² (default 48).
    #[arg(long, global = true)]
    quad_order_radial: Option<usize>,
    /// Gauss-Legendre order per polar angle (default 48).
    #[arg(long, global = true)]
    quad_order_angular: Option<usize>,
    /// Equispaced points per phase angle (default 32).
    #[arg(long, global = true)]
    quad_points_lambda: Option<usize>,
    /// Overrides each suite's default tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random points and labels (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// json, csv or text.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output directory; defaults to $SWALG_OUT_DIR, then ./swalg-out.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON object or key=value lines using the flag names as keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest j in the oscillator matrix-element grid (default 1.5).
    #[arg(long, global = true)]
    max_j: Option<f64>,
}

/// Settings from a config file; same keys as the flags.
#[derive(Deserialize, Debug, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "D")]
    d: Option<usize>,
    omega: Option<f64>,
    n_max: Option<u32>,
    quad_order_radial: Option<usize>,
    quad_order_angular: Option<usize>,
    quad_points_lambda: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    format: Option<String>,
    out: Option<PathBuf>,
    max_j: Option<f64>,
}

fn parse_config(text: &str) -> Result<FileConfig, Error> {
    let trimmed = text.trim_start();
    let value = if trimmed.starts_with('{') {
        serde_json::from_str::<Value>(text).map_err(|e| Error::Usage(format!("config: {e}")))?
    } else {
        let mut map = Map::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!("config line {}: expected key=value", i + 1))
            })?;
            let v = v.trim();
            let parsed = serde_json::from_str::<Value>(v)
                .ok()
                .filter(Value::is_number)
                .unwrap_or_else(|| Value::String(v.to_string()));
            map.insert(k.trim().to_string(), parsed);
        }
        Value::Object(map)
    };
    serde_json::from_value(value).map_err(|e| Error::Usage(format!("config: {e}")))
}

struct Settings {
    cfg: RunConfig,
    format: OutputFormat,
    out: PathBuf,
}

fn settings(flags: &Flags) -> anyhow::Result<Settings> {
    let file = match &flags.config {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
            parse_config(&text)?
        }
        None => FileConfig::default(),
    };
    let mut cfg = RunConfig::default();
    macro_rules! pick {
        ($field:ident) => {
            flags.$field.or(file.$field)
        };
    }
    if let Some(v) = pick!(d) {
        cfg.d = v;
    }
    if let Some(v) = pick!(omega) {
        cfg.omega = v;
    }
    if let Some(v) = pick!(n_max) {
        cfg.n_max = v;
    }
    if let Some(v) = pick!(quad_order_radial) {
        cfg.orders.radial = v;
    }
    if let Some(v) = pick!(quad_order_angular) {
        cfg.orders.angular = v;
    }
    if let Some(v) = pick!(quad_points_lambda) {
        cfg.orders.lambda = v;
    }
    if let Some(v) = pick!(seed) {
        cfg.seed = v;
    }
    cfg.tol = pick!(tol);
    if let Some(v) = pick!(max_j) {
        cfg.max_j = Half::from_f64(v)
            .ok_or_else(|| Error::Usage(format!("max-j must be a multiple of 1/2, got {v}")))?;
    }
    cfg.validate()?;
    let format = match flags.format.clone().or(file.format) {
        Some(f) => f.parse()?,
        None => OutputFormat::Json,
    };
    let out = flags
        .out
        .clone()
        .or(file.out)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    Ok(Settings { cfg, format, out })
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_report(dir: &Path, format: OutputFormat, report: &SuiteReport) -> anyhow::Result<()> {
    let suite = &report.summary.suite;
    match format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&report.to_json())?;
            write(&dir.join(format!("{suite}.json")), &(text + "\n"))?;
        }
        OutputFormat::Csv => {
            for t in &report.tables {
                let rounded = swalg::suite::Table {
                    rows: t
                        .rows
                        .iter()
                        .map(|r| r.iter().cloned().map(round_floats).collect())
                        .collect(),
                    ..t.clone()
                };
                write(
                    &dir.join(format!("{suite}-{}.csv", t.name)),
                    &rounded.to_csv()?,
                )?;
            }
        }
        OutputFormat::Text => write(&dir.join(format!("{suite}.txt")), &render_text(report))?,
    }
    Ok(())
}

fn suites(cmd: Command, d: usize) -> Vec<SuiteName> {
    match cmd {
        Command::Spectrum => vec![SuiteName::Spectrum],
        Command::Enumerate => vec![SuiteName::Enumerate],
        Command::VerifyAlgebra => vec![SuiteName::VerifyAlgebra],
        Command::VerifyBasis => vec![SuiteName::VerifyBasis],
        Command::VerifyReduction => vec![SuiteName::VerifyReduction],
        Command::VerifyMatrixElements => vec![SuiteName::VerifyMatrixElements],
        Command::Export => vec![SuiteName::Export],
        Command::All => SuiteName::ALL
            .into_iter()
            .filter(|s| d == 2 || *s != SuiteName::VerifyMatrixElements)
            .collect(),
    }
}

/// Library errors caused by the invocation map to exit code 2.
fn is_usage(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::Usage(_)
                | Error::UnsupportedDimension(..)
                | Error::ParameterDomain(_)
                | Error::Label(_)
        )
    )
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let s = settings(&cli.flags)?;
    fs::create_dir_all(&s.out).with_context(|| format!("creating {}", s.out.display()))?;
    let mut summaries = Vec::new();
    let mut ok = true;
    for suite in suites(cli.command, s.cfg.d) {
        let report = run_suite(suite, &s.cfg)?;
        let sm = &report.summary;
        println!(
            "{}: {} ({} checks, {} failures, max error {:.3e})",
            sm.suite,
            if sm.passed() { "PASS" } else { "FAIL" },
            sm.checks,
            sm.failures,
            sm.max_error
        );
        ok &= sm.passed();
        write_report(&s.out, s.format, &report)?;
        summaries.push(summary_json(sm));
    }
    let text = serde_json::to_string_pretty(&Value::Array(summaries))?;
    write(&s.out.join("summary.json"), &(text + "\n"))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
