//! The `kkv` command line: invariant tables, verification suites,
//! quasimodular recognition of series files, and vertex audits.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid flags or unparsable
//! input, 3 a failed check, 4 not quasimodular, 5 insufficient precision.

pub mod output;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kkv_core::kkv::{
    euler_pk_table, kkv_R_table, kkv_r_table, ky_euler_table, point_series_pairs_upto, InvariantTable, KkvError,
};
use kkv_core::modforms::{discriminant_q, qmod_recognize, ModFormError};
use kkv_core::series::parse_series;
use kkv_core::series::rational::format_rational;
use kkv_core::vertex::{divisibility_audit, Partition};
use serde_json::json;

use output::{render, Format, Record};
use suites::Check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_NOT_QUASIMODULAR: i32 = 4;
pub const EXIT_INSUFFICIENT_PRECISION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "kkv", version, about = "Exact curve-counting invariants of K3 surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit an invariant table.
    Table(TableArgs),
    /// Run a verification suite; exit 3 if any check fails.
    Verify(VerifyArgs),
    /// Recognize a series file as a quasimodular form.
    Recognize(RecognizeArgs),
    /// Enumerate vertex box configurations with their constant terms.
    Vertex(VertexArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// BPS counts r_{g,h}.
    #[value(name = "r")]
    BpsR,
    /// Hodge integrals R_{g,h}.
    #[value(name = "R")]
    HodgeR,
    /// Euler characteristics e(P_n(S,h)).
    #[value(name = "euler")]
    Euler,
    /// Point integrals C^k_{n,h}, all k up to --k.
    #[value(name = "C")]
    CPoint,
    /// Euler characteristics e(P^k_n(S,h)), all k up to --k.
    #[value(name = "euler_pk")]
    EulerPk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Kkv,
    Points,
    Gwpt,
    #[value(name = "appendixB")]
    AppendixB,
    Vertex,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 6)]
    pub gmax: u32,
    #[arg(long, default_value_t = 6)]
    pub hmax: u32,
    #[arg(long, default_value_t = 6)]
    pub nmax: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 6)]
    pub gmax: u32,
    #[arg(long, default_value_t = 6)]
    pub hmax: u32,
    #[arg(long, default_value_t = 6)]
    pub nmax: u32,
    /// Largest number of point insertions checked.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, default_value_t = 20)]
    pub qorder: u32,
    #[arg(long, default_value_t = 12)]
    pub uorder: u32,
    #[arg(long, default_value = "1")]
    pub mu: Partition,
    #[arg(long, default_value_t = 2)]
    pub excess: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    /// A series in the `var=q order=N` / `exp: p/q` text format.
    pub file: PathBuf,
    #[arg(long)]
    pub weight_max: u32,
    /// Multiply by Delta(q) first, clearing a simple pole at q = 0.
    #[arg(long)]
    pub delta_pole: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VertexArgs {
    /// Parts of mu, e.g. `2,1`; empty for the empty partition.
    #[arg(long)]
    pub mu: Partition,
    #[arg(long, default_value_t = 2)]
    pub excess: u32,
    /// Exit 3 if any config violates the constant-term criterion.
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn table_records(table: &InvariantTable) -> Vec<Record> {
    let names = table.kind().index_names();
    table
        .entries()
        .map(|(idx, v)| {
            let mut r = Record::new();
            for (name, i) in names.iter().zip(idx) {
                r.insert((*name).to_string(), json!(i));
            }
            r.insert("value".into(), json!(format_rational(v)));
            r
        })
        .collect()
}

fn run_table(a: &TableArgs) -> Result<(String, i32)> {
    let table = match a.kind {
        Kind::BpsR => kkv_r_table(a.gmax, a.hmax),
        Kind::HodgeR => kkv_R_table(a.gmax, a.hmax)?,
        Kind::Euler => ky_euler_table(a.nmax as i64, a.hmax)?,
        Kind::CPoint => point_series_pairs_upto(a.k, a.nmax as i64, a.hmax),
        Kind::EulerPk => euler_pk_table(a.k, a.nmax as i64, a.hmax)?,
    };
    Ok((render(&table_records(&table), a.out.format)?, EXIT_OK))
}

/// Exit 0 iff every check passed, else 3.
pub fn verdict(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

pub fn render_checks(checks: &[Check], format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(checks.iter().map(|c| c.line() + "\n").collect()),
        f => render(&checks.iter().map(Check::record).collect::<Vec<_>>(), f),
    }
}

fn run_verify(a: &VerifyArgs) -> Result<(String, i32)> {
    let checks = match a.suite {
        Suite::Kkv => suites::kkv_suite(&suites::KkvBounds {
            g_max: a.gmax,
            h_max: a.hmax,
            n_max: a.nmax,
            u_order: a.uorder,
            q_order: a.qorder,
        })?,
        Suite::Points => suites::points_suite(&suites::PointBounds { k: a.k, n_max: a.nmax, h_max: a.hmax })?,
        Suite::Gwpt => {
            suites::gwpt_suite(&suites::GwBounds { k: a.k, g_max: a.gmax, h_max: a.hmax, u_order: a.uorder })?
        }
        Suite::AppendixB => suites::appendix_suite(a.qorder, a.hmax)?,
        Suite::Vertex => suites::vertex_suite(&a.mu, a.excess)?,
    };
    Ok((render_checks(&checks, a.out.format)?, verdict(&checks)))
}

fn run_recognize(a: &RecognizeArgs) -> Result<(String, i32)> {
    let text = std::fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))
        .map_err(|e| anyhow!(UsageError(format!("{e:#}"))))?;
    let mut f = parse_series(&text).map_err(|e| anyhow!(UsageError(e.to_string())))?;
    if a.delta_pole {
        f = &f * &discriminant_q(f.order() + 2);
    }
    let element = qmod_recognize(&f, a.weight_max)?;
    let out = match a.out.format {
        Format::Text => element.to_text(),
        fmt => {
            let records: Vec<Record> = element
                .terms()
                .map(|((x, y, z), c)| {
                    let mut r = Record::new();
                    r.insert("e2".into(), json!(x));
                    r.insert("e4".into(), json!(y));
                    r.insert("e6".into(), json!(z));
                    r.insert("value".into(), json!(format_rational(c)));
                    r
                })
                .collect();
            render(&records, fmt)?
        }
    };
    Ok((out, EXIT_OK))
}

fn run_vertex(a: &VertexArgs) -> Result<(String, i32)> {
    let report = divisibility_audit(&a.mu, a.excess)?;
    let records: Vec<Record> = report
        .rows
        .iter()
        .map(|row| {
            let chain: Vec<Vec<u32>> = row.config.nus().iter().map(|nu| nu.parts().to_vec()).collect();
            let mut r = Record::new();
            r.insert("mu".into(), json!(row.config.mu().parts()));
            r.insert("chain".into(), json!(chain));
            r.insert("q_size".into(), json!(row.q_size));
            r.insert("h677".into(), json!(format_rational(&row.h677)));
            r.insert("direct".into(), json!(format_rational(&row.direct)));
            r.insert("formula_matches".into(), json!(row.formula_matches));
            r.insert("nonpositive".into(), json!(row.nonpositive));
            r.insert("negative_when_excess".into(), json!(row.negative_when_excess));
            r.insert("zero_weight_monomial".into(), json!(row.zero_weight_monomial));
            r
        })
        .collect();
    let code = if a.audit && !report.passes() { EXIT_CHECK_FAILED } else { EXIT_OK };
    Ok((render(&records, a.out.format)?, code))
}

/// Invalid input detected after flag parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    let modform = e
        .downcast_ref::<ModFormError>()
        .or_else(|| match e.downcast_ref::<KkvError>() {
            Some(KkvError::ModForm(m)) => Some(m),
            _ => None,
        });
    match modform {
        Some(ModFormError::NotQuasimodular { .. } | ModFormError::HasPole(_)) => EXIT_NOT_QUASIMODULAR,
        Some(ModFormError::InsufficientPrecision { .. }) => EXIT_INSUFFICIENT_PRECISION,
        _ => EXIT_INTERNAL,
    }
}

/// `KKV_THREADS` caps the global rayon pool.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("KKV_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| anyhow!(UsageError(format!("KKV_THREADS must be a positive integer, got `{v}`"))))?;
    if n == 0 {
        return Err(anyhow!(UsageError("KKV_THREADS must be positive".into())));
    }
    #[cfg(feature = "parallel")]
    {
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(String, i32, Option<PathBuf>)> {
    let (text, code, out) = match &cli.command {
        Command::Table(a) => {
            let (t, c) = run_table(a)?;
            (t, c, &a.out)
        }
        Command::Verify(a) => {
            let (t, c) = run_verify(a)?;
            (t, c, &a.out)
        }
        Command::Recognize(a) => {
            let (t, c) = run_recognize(a)?;
            (t, c, &a.out)
        }
        Command::Vertex(a) => {
            let (t, c) = run_vertex(a)?;
            (t, c, &a.out)
        }
    };
    Ok((text, code, out.output.clone()))
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = configure_threads().and_then(|()| dispatch(&cli)).and_then(|(text, code, path)| {
        match path {
            Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code_for(&e)
        }
    }
}
