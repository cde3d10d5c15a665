//! Command-line front end for `fuscat-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand inside a rayon
//! pool of the requested size and renders a report. Reports carry no
//! timestamps unless `--timing` is given, so identical inputs give
//! byte-identical output regardless of `--workers`.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

mod commands;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    /// The input is not a based ring, or could not be read.
    pub const BAD_RING: i32 = 2;
    /// A computed result contradicts the published classification.
    pub const MISMATCH: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "fuscat",
    version,
    about = "Exact checks for rank-4 based rings with two self-dual basis elements"
)]
struct Cli {
    /// Output format; csv is only available for tabular results.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the based-ring axioms for a ring file.
    Verify { file: PathBuf },
    /// Formal codegrees of a ring file and the pseudo-unitarity gates.
    Codegrees { file: PathBuf },
    /// Build a family member, or convert an R(x, y, g, d) quadruple.
    Family {
        #[command(subcommand)]
        which: FamilyCmd,
    },
    /// Run the codegree classification over a box of R(x, y, g, d).
    Classify(ClassifyArgs),
    /// Scan a one-parameter family with the Drinfeld-center obstruction.
    Obstruct {
        #[command(subcommand)]
        which: ObstructCmd,
    },
    /// Fewest roots of unity summing to a + b sqrt(c), by exhaustive search.
    Minroots(MinrootsArgs),
    /// Galois orbits of primitive roots of a given order over Q(sqrt(c)).
    Orbits(OrbitsArgs),
}

#[derive(Debug, Subcommand)]
enum FamilyCmd {
    /// K(1, e, 1, 0, 0, 0).
    K1 {
        #[arg(long)]
        e: i64,
        /// Write the ring file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// K(c, 0, 0, 1, c, 0).
    K2 {
        #[arg(long)]
        c: i64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Convert R(x, y, g, d) to K parameters, or report the violated constraint.
    R {
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long, allow_negative_numbers = true)]
        y: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, default_value_t = 3)]
    xmax: i64,
    #[arg(long, default_value_t = 3)]
    ymax: i64,
    #[arg(long, default_value_t = 6)]
    gmax: i64,
    #[arg(long, default_value_t = 40)]
    dmax: i64,
}

#[derive(Debug, Subcommand)]
enum ObstructCmd {
    /// K1(e) for 0 <= e <= max-e.
    K1 {
        #[arg(long = "max-e")]
        max_e: i64,
        /// Also re-derive the twist identities for the survivors.
        #[arg(long)]
        twists: bool,
    },
    /// K2(c) for 0 <= c <= max-c.
    K2 {
        #[arg(long = "max-c")]
        max_c: i64,
        #[arg(long)]
        twists: bool,
    },
}

#[derive(Debug, Args)]
struct MinrootsArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    #[arg(long)]
    c: u64,
    /// Also require the squares to sum to a2 + b2 sqrt(c).
    #[arg(long, requires_all = ["a2", "b2"])]
    paired: bool,
    #[arg(long, allow_negative_numbers = true, requires = "paired")]
    a2: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "paired")]
    b2: Option<i64>,
    /// Roots are drawn from the order-th roots of unity.
    #[arg(long = "max-order", default_value_t = 48)]
    max_order: u64,
    /// Largest multiset size searched.
    #[arg(long = "max-count", default_value_t = 8)]
    max_count: usize,
    /// Lift the limits on order and count.
    #[arg(long = "allow-large")]
    allow_large: bool,
}

#[derive(Debug, Args)]
struct OrbitsArgs {
    #[arg(long)]
    c: u64,
    #[arg(long)]
    order: u64,
    /// Evaluate the per-orbit certificates behind the closed-form bounds.
    #[arg(long)]
    certificate: bool,
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn err(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Failure before a report could be produced.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    BadInput(String),
    Budget(String),
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        match self {
            Failure::Usage(m) => Outcome::err(exit::USAGE, format!("error: {m}")),
            Failure::BadInput(m) => Outcome::err(exit::BAD_RING, format!("error: {m}")),
            Failure::Budget(m) => Outcome::err(exit::BUDGET, format!("error: {m}")),
        }
    }
}

/// Rows for csv output.
pub(crate) struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Everything a subcommand produces; the envelope is added by [`run`].
pub(crate) struct Report {
    /// Canonical command line, without global options.
    pub command: String,
    /// Extra bytes hashed into the input digest (file contents).
    pub input: Vec<u8>,
    pub result: Value,
    pub text: String,
    pub table: Option<Table>,
    pub assumptions: Vec<String>,
    pub code: i32,
}

/// Parses `args` (including the program name) and executes the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: exit::OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::err(exit::USAGE, text),
            };
        }
    };
    if cli.workers == Some(0) {
        return Outcome::err(exit::USAGE, "error: --workers must be at least 1");
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::err(exit::USAGE, format!("error: cannot start workers: {e}")),
    };
    let start = Instant::now();
    let report = match pool.install(|| commands::execute(&cli.command)) {
        Ok(r) => r,
        Err(f) => return f.into_outcome(),
    };
    let elapsed = cli.timing.then(|| start.elapsed());
    render(report, cli.format, elapsed)
}

fn input_digest(report: &Report) -> String {
    let mut h = Sha256::new();
    h.update(report.command.as_bytes());
    h.update([0u8]);
    h.update(&report.input);
    hex::encode(h.finalize())
}

fn render(report: Report, format: Format, elapsed: Option<std::time::Duration>) -> Outcome {
    let stdout = match format {
        Format::Json => {
            let mut env = json!({
                "command": report.command,
                "input_digest": input_digest(&report),
                "result": report.result,
                "assumptions": report.assumptions,
                "exit_code": report.code,
            });
            if let Some(t) = elapsed {
                env["timing_ms"] = json!(t.as_millis() as u64);
            }
            let mut s = serde_json::to_string_pretty(&env).expect("report values are plain JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = report.text;
            if !report.assumptions.is_empty() {
                s.push_str("assumptions:\n");
                for a in &report.assumptions {
                    s.push_str("  - ");
                    s.push_str(a);
                    s.push('\n');
                }
            }
            if let Some(t) = elapsed {
                s.push_str(&format!("elapsed: {} ms\n", t.as_millis()));
            }
            s
        }
        Format::Csv => match &report.table {
            Some(t) => match write_csv(t) {
                Ok(s) => s,
                Err(e) => {
                    return Outcome::err(exit::USAGE, format!("error: csv output failed: {e}"))
                }
            },
            None => {
                return Outcome::err(
                    exit::USAGE,
                    format!(
                        "error: `{}` has no tabular output; use --format text or json",
                        report.command
                    ),
                )
            }
        },
    };
    Outcome {
        code: report.code,
        stdout,
        stderr: String::new(),
    }
}

fn write_csv(t: &Table) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers)?;
    for row in &t.rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
