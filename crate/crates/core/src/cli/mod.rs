//! The `ppcount` command line.
//!
//! ```text
//! ppcount table --qmax <n>
//! ppcount count --field <spec> [--method auto|interpolation|criterion|inclexcl|permanent]
//! ppcount verify --field <spec> [--seed <s>]
//! ppcount bound-report --qmax <n>
//! ```
//!
//! Global flags: `--format json|csv|markdown`, `--workers <n>` (or
//! `PPCOUNT_WORKERS`), `--cache <path>`, `--timings`. Without `--timings`
//! the output contains no wall-clock data, so repeated runs are
//! byte-identical.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 mismatch or failed check,
//! 3 method/range incompatibility, 4 field spec rejected.

mod cache;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::arith::{factorial, prime_powers_up_to};
use crate::bounds::{conjectured_constant, theorem_constant, theorem_report, BoundReport};
use crate::counting::{self, CountResult, Method};
use crate::error::Error;
use crate::gf::{FieldSpec, FiniteField};

pub use cache::Cache;
pub use verify::{run_suites, Status, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_RANGE: i32 = 3;
pub const EXIT_FIELD_SPEC: i32 = 4;

pub const WORKERS_ENV: &str = "PPCOUNT_WORKERS";
pub const DEFAULT_SEED: u64 = 20_011_105;
pub const TABLE_MAX_Q: u64 = 20;
pub const BOUND_REPORT_MAX_Q: u64 = 16;

/// Published values of `N(q)`, used as the golden reference by `table`.
pub const REFERENCE_TABLE: [(u64, u64); 8] = [
    (2, 0),
    (3, 0),
    (4, 12),
    (5, 20),
    (7, 630),
    (8, 5368),
    (9, 42120),
    (11, 3_634_950),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

impl std::str::FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(MethodChoice::Auto)
        } else {
            s.parse().map(MethodChoice::Fixed)
        }
    }
}

impl MethodChoice {
    fn resolve(self, q: u32) -> Method {
        match self {
            MethodChoice::Auto => Method::auto(q),
            MethodChoice::Fixed(m) => m,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ppcount", version, about = "Count permutations of GF(q) with low-degree permutation polynomials")]
struct Args {
    #[arg(long, global = true, value_enum, default_value = "markdown")]
    format: Format,
    /// Worker threads; overrides PPCOUNT_WORKERS.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Newline-delimited JSON file of previous counts.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Include elapsed times in the output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute N(q) for every prime power q ≤ qmax and compare with the reference table.
    Table {
        #[arg(long)]
        qmax: u64,
    },
    /// Count one field with one method.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
    },
    /// Run the identity and inequality suites for one field.
    Verify {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Emit the bound chain for every prime power q ≤ qmax.
    BoundReport {
        #[arg(long)]
        qmax: u64,
    },
}

/// Resolved settings shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: Option<String>,
    pub method: MethodChoice,
    pub workers: usize,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub seed: u64,
    pub timings: bool,
}

/// Command-line flag, then environment, then available parallelism.
fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(WORKERS_ENV).ok()?.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

struct Ctx<'a> {
    config: RunConfig,
    pool: rayon::ThreadPool,
    cache: Cache,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Failure that ends a command with a specific exit code.
struct Exit(i32);

impl From<std::io::Error> for Exit {
    fn from(_: std::io::Error) -> Self {
        Exit(EXIT_USAGE)
    }
}

type CmdResult = Result<i32, Exit>;

/// Runs `ppcount` with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let (field, method, seed) = match &args.command {
        Command::Count { field, method } => (Some(field.clone()), *method, DEFAULT_SEED),
        Command::Verify { field, seed } => (Some(field.clone()), MethodChoice::Auto, *seed),
        _ => (None, MethodChoice::Auto, DEFAULT_SEED),
    };
    let config = RunConfig {
        field,
        method,
        workers: resolve_workers(args.workers),
        format: args.format,
        cache: args.cache.clone(),
        seed,
        timings: args.timings,
    };
    let cache = match &config.cache {
        Some(path) => match Cache::open(path) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(err, "error: cannot read cache: {e}");
                return EXIT_USAGE;
            }
        },
        None => Cache::disabled(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start workers: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        config,
        pool,
        cache,
        out,
        err,
    };
    let result = match args.command {
        Command::Table { qmax } => ctx.table(qmax),
        Command::Count { .. } => ctx.count(),
        Command::Verify { .. } => ctx.verify(),
        Command::BoundReport { qmax } => ctx.bound_report(qmax),
    };
    let code = result.unwrap_or_else(|Exit(code)| code);
    let _ = ctx.out.flush();
    code
}

fn reference_value(q: u64) -> Option<u64> {
    REFERENCE_TABLE.iter().find(|(rq, _)| *rq == q).map(|&(_, n)| n)
}

impl Ctx<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "error: {msg}");
        Exit(code)
    }

    fn field_from_config(&mut self) -> Result<FiniteField, Exit> {
        let text = self.config.field.clone().unwrap_or_default();
        let spec: FieldSpec = text
            .parse()
            .map_err(|e: Error| self.fail(EXIT_FIELD_SPEC, e))?;
        FiniteField::new(&spec).map_err(|e| match e {
            Error::RangeExceeded { .. } => self.fail(EXIT_RANGE, e),
            e => self.fail(EXIT_FIELD_SPEC, e),
        })
    }

    /// Count with `method`, consulting the cache; `reuse` returns a cached
    /// record instead of recomputing.
    fn counted(&mut self, field: &FiniteField, method: Method, reuse: bool) -> Result<CountResult, Exit> {
        let q = field.q() as u64;
        let name = field.spec().to_string();
        let cached = self.cache.lookup(q, &name).cloned();
        if reuse {
            if let Some(hit) = cached {
                return Ok(hit);
            }
        }
        if !method.accepts(field.q()) {
            return Err(self.fail(
                EXIT_RANGE,
                format!("method {method} does not support q = {q} (limit {})", method.max_q()),
            ));
        }
        let result = self.pool.install(|| counting::count(field, method)).map_err(|e| match e {
            Error::RangeExceeded { .. } | Error::FieldTooSmall { .. } => self.fail(EXIT_RANGE, e),
            e => self.fail(EXIT_MISMATCH, e),
        })?;
        match cached {
            Some(hit) if hit.n != result.n => {
                return Err(self.fail(
                    EXIT_MISMATCH,
                    format!("cache holds N = {} for q = {q}, recomputed {}", hit.n, result.n),
                ));
            }
            Some(_) => {}
            None => self.cache.insert(result.clone())?,
        }
        Ok(result)
    }

    fn count_json(&self, r: &CountResult) -> String {
        let mut v = serde_json::to_value(r).expect("CountResult serializes");
        if !self.config.timings {
            v.as_object_mut().expect("object").remove("elapsed_s");
        }
        v.to_string()
    }

    fn count(&mut self) -> CmdResult {
        let field = self.field_from_config()?;
        let method = self.config.method.resolve(field.q());
        let r = self.counted(&field, method, false)?;
        let timings = self.config.timings;
        match self.config.format {
            Format::Json => writeln!(self.out, "{}", self.count_json(&r))?,
            Format::Csv => {
                if timings {
                    writeln!(self.out, "{}", CountResult::CSV_HEADER)?;
                    writeln!(self.out, "{}", r.to_csv_row())?;
                } else {
                    writeln!(self.out, "q,N,method,field")?;
                    writeln!(self.out, "{},{},{},{}", r.q, r.n, r.method, r.field)?;
                }
            }
            Format::Markdown => {
                if timings {
                    writeln!(self.out, "| q | N | method | elapsed_s | field |\n|---|---|---|---|---|")?;
                    writeln!(self.out, "| {} | {} | {} | {:.3} | {} |", r.q, r.n, r.method, r.elapsed_s, r.field)?;
                } else {
                    writeln!(self.out, "| q | N | method | field |\n|---|---|---|---|")?;
                    writeln!(self.out, "| {} | {} | {} | {} |", r.q, r.n, r.method, r.field)?;
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn table(&mut self, qmax: u64) -> CmdResult {
        if !(2..=TABLE_MAX_Q).contains(&qmax) {
            return Err(self.fail(EXIT_RANGE, format!("--qmax must lie in 2..={TABLE_MAX_Q}")));
        }
        struct Row {
            result: CountResult,
            factorial: BigUint,
            status: String,
        }
        let mut rows = Vec::new();
        let mut mismatches = 0;
        for q in prime_powers_up_to(qmax) {
            let spec = FieldSpec::for_order(q).expect("prime power");
            let field = FiniteField::new(&spec).map_err(|e| self.fail(EXIT_RANGE, e))?;
            let result = self.counted(&field, Method::auto(q as u32), true)?;
            let status = match reference_value(q) {
                Some(want) if result.n == BigUint::from(want) => "match".to_string(),
                Some(want) => {
                    mismatches += 1;
                    writeln!(self.err, "mismatch at q = {q}: expected {want}, got {}", result.n)?;
                    format!("MISMATCH (expected {want})")
                }
                None => {
                    let report = self.pool.install(|| theorem_report(&field, &result.n)).map_err(|e| self.fail(EXIT_RANGE, e))?;
                    if report.theorem_holds {
                        "extended".to_string()
                    } else {
                        mismatches += 1;
                        writeln!(self.err, "bound violated at q = {q}")?;
                        "BOUND VIOLATION".to_string()
                    }
                }
            };
            rows.push(Row {
                factorial: factorial(q - 1),
                result,
                status,
            });
        }

        let timings = self.config.timings;
        match self.config.format {
            Format::Markdown => {
                let line = |label: &str, cells: Vec<String>| format!("| {label} | {} |", cells.join(" | "));
                writeln!(self.out, "{}", line("q", rows.iter().map(|r| r.result.q.to_string()).collect()))?;
                writeln!(self.out, "|---|{}", "---|".repeat(rows.len()))?;
                writeln!(self.out, "{}", line("N", rows.iter().map(|r| r.result.n.to_string()).collect()))?;
                writeln!(self.out, "{}", line("(q-1)!", rows.iter().map(|r| r.factorial.to_string()).collect()))?;
                writeln!(
                    self.out,
                    "{}",
                    line("method", rows.iter().map(|r| r.result.method.to_string()).collect())
                )?;
                if timings {
                    writeln!(
                        self.out,
                        "{}",
                        line("time (s)", rows.iter().map(|r| format!("{:.3}", r.result.elapsed_s)).collect())
                    )?;
                }
                writeln!(self.out, "{}", line("status", rows.iter().map(|r| r.status.clone()).collect()))?;
            }
            Format::Csv => {
                let extra = if timings { ",elapsed_s" } else { "" };
                writeln!(self.out, "q,N,(q-1)!,method,status{extra}")?;
                for r in &rows {
                    let t = if timings { format!(",{}", r.result.elapsed_s) } else { String::new() };
                    writeln!(
                        self.out,
                        "{},{},{},{},{}{t}",
                        r.result.q, r.result.n, r.factorial, r.result.method, r.status
                    )?;
                }
            }
            Format::Json => {
                for r in &rows {
                    let mut v = json!({
                        "q": r.result.q,
                        "N": r.result.n.to_string(),
                        "factorial": r.factorial.to_string(),
                        "method": r.result.method,
                        "status": r.status,
                        "field": r.result.field,
                    });
                    if timings {
                        v["elapsed_s"] = json!(r.result.elapsed_s);
                    }
                    writeln!(self.out, "{v}")?;
                }
            }
        }
        Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
    }

    fn verify(&mut self) -> CmdResult {
        let field = self.field_from_config()?;
        let seed = self.config.seed;
        let outcomes = self.pool.install(|| run_suites(&field, seed)).map_err(|e| match e {
            Error::RangeExceeded { .. } => self.fail(EXIT_RANGE, e),
            e => self.fail(EXIT_MISMATCH, e),
        })?;
        match self.config.format {
            Format::Markdown => {
                writeln!(self.out, "| suite | status | detail |\n|---|---|---|")?;
                for o in &outcomes {
                    let status = serde_json::to_value(o.status).expect("status serializes");
                    writeln!(
                        self.out,
                        "| {} | {} | {} |",
                        o.suite,
                        status.as_str().unwrap_or(""),
                        o.detail.replace('|', "\\|")
                    )?;
                }
            }
            Format::Csv => {
                writeln!(self.out, "suite,status,detail")?;
                for o in &outcomes {
                    let status = serde_json::to_value(o.status).expect("status serializes");
                    writeln!(
                        self.out,
                        "{},{},\"{}\"",
                        o.suite,
                        status.as_str().unwrap_or(""),
                        o.detail.replace('"', "\"\"")
                    )?;
                }
            }
            Format::Json => {
                for o in &outcomes {
                    writeln!(self.out, "{}", serde_json::to_string(o).expect("outcome serializes"))?;
                }
            }
        }
        let failed: Vec<&str> = outcomes
            .iter()
            .filter(|o| o.status == Status::Fail)
            .map(|o| o.suite)
            .collect();
        if failed.is_empty() {
            Ok(EXIT_OK)
        } else {
            writeln!(self.err, "failed suites: {}", failed.join(", "))?;
            Ok(EXIT_MISMATCH)
        }
    }

    fn bound_report(&mut self, qmax: u64) -> CmdResult {
        if !(2..=BOUND_REPORT_MAX_Q).contains(&qmax) {
            return Err(self.fail(EXIT_RANGE, format!("--qmax must lie in 2..={BOUND_REPORT_MAX_Q}")));
        }
        let mut reports: Vec<BoundReport> = Vec::new();
        for q in prime_powers_up_to(qmax) {
            let field = FiniteField::new(&FieldSpec::for_order(q).expect("prime power"))
                .map_err(|e| self.fail(EXIT_RANGE, e))?;
            let n = self.counted(&field, Method::auto(q as u32), true)?.n;
            reports.push(self.pool.install(|| theorem_report(&field, &n)).map_err(|e| self.fail(EXIT_RANGE, e))?);
        }
        match self.config.format {
            Format::Markdown => {
                writeln!(
                    self.out,
                    "constants: sqrt(2e/π) = {:.6}, sqrt(e/2π) = {:.6}\n",
                    theorem_constant(),
                    conjectured_constant()
                )?;
                writeln!(self.out, "{}", BoundReport::MARKDOWN_HEADER)?;
                for r in &reports {
                    writeln!(self.out, "{}", r.to_markdown_row())?;
                }
            }
            Format::Csv => {
                writeln!(
                    self.out,
                    "q,N,deviation,bravoigor_rhs,fine_rhs,theorem_rhs,empirical_constant,fine_constant,passed"
                )?;
                for r in &reports {
                    writeln!(
                        self.out,
                        "{},{},{},{},{},{},{},{},{}",
                        r.q,
                        r.n,
                        r.deviation,
                        r.bravoigor_rhs.map(|b| b.to_string()).unwrap_or_default(),
                        r.fine_rhs,
                        r.theorem_rhs,
                        r.empirical_constant,
                        r.fine_constant,
                        r.passed()
                    )?;
                }
            }
            Format::Json => {
                for r in &reports {
                    writeln!(self.out, "{}", r.to_json())?;
                }
            }
        }
        let failed: Vec<u64> = reports.iter().filter(|r| !r.passed()).map(|r| r.q).collect();
        if failed.is_empty() {
            Ok(EXIT_OK)
        } else {
            writeln!(self.err, "bound checks failed for q in {failed:?}")?;
            Ok(EXIT_MISMATCH)
        }
    }
}
