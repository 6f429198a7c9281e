//! The `verify` command: runs the catalog and renders a text or JSON report.
//!
//! Exit status: 0 when every selected check passes, 1 when any fails, 2 on a
//! usage error, 3 when a check cannot be evaluated at all.

use std::ffi::OsString;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, ValueEnum};
use globset::{Glob, GlobMatcher};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::identities::{catalog, CheckResult, IdentityCheck, RunContext};
use crate::numeric::{Precision, MIN_PRECISION_BITS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Timestamp written under `--no-timestamp`.
pub const EPOCH: &str = "1970-01-01T00:00:00Z";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Verify the identity catalog at high precision.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Args {
    /// Significand bits of every reported value (at least 64).
    #[arg(long, default_value_t = 256)]
    precision_bits: u32,
    /// Glob over check ids.
    #[arg(long, default_value = "*")]
    filter: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Replace every non-exact tolerance by 10^E.
    #[arg(long, value_name = "E", allow_negative_numbers = true)]
    tolerance_exponent: Option<i32>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print the selected check ids and exit.
    #[arg(long)]
    list: bool,
    /// Fixed timestamp and zero timings, for byte-identical reports.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub filter: String,
    pub format: OutputFormat,
    pub tolerance_exponent_override: Option<i32>,
    pub list_only: bool,
    pub jobs: usize,
    pub no_timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 256,
            filter: "*".into(),
            format: OutputFormat::Text,
            tolerance_exponent_override: None,
            list_only: false,
            jobs: 1,
            no_timestamp: false,
        }
    }
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        RunConfig {
            precision_bits: a.precision_bits,
            filter: a.filter,
            format: a.format,
            tolerance_exponent_override: a.tolerance_exponent,
            list_only: a.list,
            jobs: a.jobs,
            no_timestamp: a.no_timestamp,
        }
    }
}

/// Bad command-line input; reported on stderr with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_error: String,
    pub tolerance: String,
    pub passed: bool,
    pub evaluations: u64,
    pub elapsed_ms: u64,
}

impl CheckEntry {
    fn from_result(r: &CheckResult, no_timestamp: bool) -> Self {
        CheckEntry {
            id: r.id.clone(),
            description: r.description.clone(),
            paper_ref: r.paper_ref.clone(),
            lhs: r.lhs_value.to_decimal(),
            rhs: r.rhs_value.to_decimal(),
            abs_error: r.abs_error.to_decimal(),
            tolerance: r.tolerance.to_decimal(),
            passed: r.passed,
            evaluations: r.evaluations,
            elapsed_ms: if no_timestamp { 0 } else { r.elapsed_ms },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub precision_bits: u32,
    pub started_at: String,
    pub checks: Vec<CheckEntry>,
    pub passed_count: usize,
    pub failed_count: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed_count == 0
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    id: &'a str,
    description: &'a str,
    paper_ref: &'a str,
}

#[derive(Serialize)]
struct Listing<'a> {
    checks: Vec<ListEntry<'a>>,
}

fn matcher(filter: &str) -> Result<GlobMatcher, UsageError> {
    Glob::new(filter)
        .map(|g| g.compile_matcher())
        .map_err(|e| UsageError(format!("invalid filter `{filter}`: {e}")))
}

/// Catalog checks whose id matches `filter`, in catalog order.
pub fn select(filter: &str) -> Result<Vec<&'static IdentityCheck>, UsageError> {
    let m = matcher(filter)?;
    Ok(catalog().iter().filter(|c| m.is_match(&c.id)).collect())
}

fn validate(config: &RunConfig) -> Result<Precision, UsageError> {
    if config.precision_bits < MIN_PRECISION_BITS {
        return Err(UsageError(format!(
            "--precision-bits must be at least {MIN_PRECISION_BITS}, got {}",
            config.precision_bits
        )));
    }
    if config.jobs == 0 {
        return Err(UsageError("--jobs must be at least 1".into()));
    }
    Precision::new(config.precision_bits).map_err(|e| UsageError(e.to_string()))
}

/// Why a run produced no report.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error("check `{id}` failed to evaluate: {source}")]
    Internal { id: String, source: Error },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Internal { .. } => EXIT_INTERNAL,
        }
    }
}

/// Runs the selected checks on `config.jobs` threads; results keep catalog
/// order whatever order they finish in.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let p = validate(config)?;
    let checks = select(&config.filter)?;
    if checks.is_empty() {
        return Err(UsageError(format!("filter `{}` matches no check", config.filter)).into());
    }
    let started_at = if config.no_timestamp {
        EPOCH.to_string()
    } else {
        chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
    };
    let ctx = RunContext::new(p).with_tolerance_exponent(config.tolerance_exponent_override);

    let slots: Vec<Mutex<Option<crate::Result<CheckResult>>>> =
        checks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..config.jobs.min(checks.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = checks.get(i) else { break };
                let r = ctx.run(c);
                *slots[i].lock().unwrap_or_else(|e| e.into_inner()) = Some(r);
            });
        }
    });

    let mut entries = Vec::with_capacity(checks.len());
    for (c, slot) in checks.iter().zip(slots) {
        let r = slot
            .into_inner()
            .unwrap_or_else(|e| e.into_inner())
            .expect("every slot is filled before the scope ends");
        let r = r.map_err(|source| RunError::Internal {
            id: c.id.clone(),
            source,
        })?;
        entries.push(CheckEntry::from_result(&r, config.no_timestamp));
    }
    let passed_count = entries.iter().filter(|e| e.passed).count();
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        precision_bits: config.precision_bits,
        started_at,
        failed_count: entries.len() - passed_count,
        passed_count,
        checks: entries,
    })
}

pub fn render_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(r: &Report) -> String {
    let mut s = format!(
        "sigma-verify {}  precision {} bits  started {}\n",
        r.tool_version, r.precision_bits, r.started_at
    );
    let width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &r.checks {
        s.push_str(&format!(
            "{} {:width$}  |err| {} <= {}  ({} evaluations, {} ms)\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            short(&c.abs_error),
            short(&c.tolerance),
            c.evaluations,
            c.elapsed_ms,
        ));
        if !c.passed {
            s.push_str(&format!("     lhs {}\n     rhs {}\n", c.lhs, c.rhs));
        }
    }
    s.push_str(&format!(
        "{} passed, {} failed\n",
        r.passed_count, r.failed_count
    ));
    s
}

/// A decimal string shortened to 3 significant digits for the text report.
fn short(decimal: &str) -> String {
    match decimal.parse::<f64>() {
        Ok(v) if v != 0.0 => format!("{v:.2e}"),
        Ok(_) => "0".into(),
        Err(_) => decimal.to_string(),
    }
}

pub fn render_list(checks: &[&IdentityCheck], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let listing = Listing {
                checks: checks
                    .iter()
                    .map(|c| ListEntry {
                        id: &c.id,
                        description: &c.description,
                        paper_ref: &c.paper_ref,
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&listing).expect("listing serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let width = checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
            checks
                .iter()
                .map(|c| format!("{:width$}  {}\n", c.id, c.paper_ref))
                .collect()
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let config = RunConfig::from(args);

    if config.list_only {
        if config.precision_bits < MIN_PRECISION_BITS {
            let _ = writeln!(err, "error: {}", validate(&config).unwrap_err());
            return EXIT_USAGE;
        }
        return match select(&config.filter) {
            Ok(checks) => {
                let _ = write!(out, "{}", render_list(&checks, config.format));
                EXIT_PASS
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        };
    }

    match run(&config) {
        Ok(report) => {
            let text = match config.format {
                OutputFormat::Json => render_json(&report),
                OutputFormat::Text => render_text(&report),
            };
            let _ = write!(out, "{text}");
            if report.all_passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            match &e {
                RunError::Internal { source, .. } => {
                    let _ = writeln!(err, "error [{}]: {e}", source.kind());
                }
                RunError::Usage(_) => {
                    let _ = writeln!(err, "error: {e}");
                }
            }
            e.exit_code()
        }
    }
}
