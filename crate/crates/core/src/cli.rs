//! Command-line front end.
//!
//! Exit codes: 0 when everything agrees, 1 on a mismatch, 2 on usage
//! errors and 3 on integrity errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::enumerate::{
    oracle_compare, oracle_roundtrip, quad_boundary_table, quad_counts, quad_two_boundary,
    tri_boundary_table, tri_counts, tri_two_boundary, verify_all, verify_identity, CellSource,
    CompareReport, CountTable, IdentityReport, RoundTripReport,
};
use crate::error::{usage, Error, Result};
use crate::par::ExecMode;
use crate::series::{BiSeries, UniSeries};
use crate::trees::Family;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "MAP_PEEL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "map-peel", version, about = "Exact counts of planar quadrangulations and triangulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Quad,
    Tri,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Quad => Family::Quad,
            FamilyArg::Tri => Family::Tri,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute exact count tables.
    Count {
        #[command(subcommand)]
        table: CountCommand,
    },
    /// Check the generating-function identities coefficient by coefficient.
    Verify {
        /// Identity name, or `all`.
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Cross-check the solvers and bijections against brute force.
    Oracle {
        #[command(subcommand)]
        check: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CountCommand {
    /// Quadrangulations with n vertices, n ≥ 2.
    Quad(MaxN),
    /// Triangulations with n vertices, n ≥ 2.
    Tri(MaxN),
    /// Quadrangulations with a boundary, by size and perimeter.
    QuadBoundary(MaxN),
    /// Triangulations with a boundary, by size and perimeter.
    TriBoundary(MaxN),
    /// Quadrangulations with two boundaries.
    QuadTwo(TwoArgs),
    /// Triangulations with two boundaries.
    TriTwo(TwoArgs),
}

#[derive(Debug, Args)]
pub struct MaxN {
    #[arg(long)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct TwoArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compare every count cell across independent methods.
    Compare {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Exhaustive round trips of the decomposition and the map bijection.
    Roundtrip {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

/// Rendered result of a command.
struct Outcome {
    text: String,
    code: i32,
    /// Extra lines for standard error.
    notes: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK, notes: Vec::new() }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Integrity(_) => EXIT_INTEGRITY,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads(std::env::var(THREADS_VAR).ok().as_deref()) {
        let _ = writeln!(err, "{e}");
        return exit_code(&e);
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return exit_code(&e);
        }
    };
    for note in &outcome.notes {
        let _ = writeln!(err, "{note}");
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => out.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

/// Applies a thread cap from the environment. The global pool can only be
/// configured once per process; later calls keep the first setting.
pub fn configure_threads(value: Option<&str>) -> Result<()> {
    let Some(v) = value else { return Ok(()) };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Count { table } => count(table, fmt).map(Outcome::ok),
        Command::Verify { identity, order } => verify(identity, *order, fmt),
        Command::Oracle { check } => match check {
            OracleCommand::Compare { family, max_n } => compare((*family).into(), *max_n, fmt),
            OracleCommand::Roundtrip { family, max_n } => roundtrip((*family).into(), *max_n, fmt),
        },
    }
}

fn render_table(t: &CountTable, fmt: Format) -> String {
    match fmt {
        Format::Csv => t.to_csv(),
        Format::Json => pretty(&t.to_json()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn need(max_n: usize) -> Result<()> {
    if max_n < 2 {
        return Err(usage("--max-n must be at least 2"));
    }
    Ok(())
}

fn uni_table(s: &UniSeries) -> CountTable {
    let mut t = CountTable::new(&["n"]);
    for n in 2..=s.order() {
        t.insert(&[n], s.coeff(n));
    }
    t
}

fn bi_table(s: &BiSeries) -> CountTable {
    let mut t = CountTable::new(&["n", "p"]);
    for n in 1..=s.order_x() {
        for p in 0..=s.ybound(n) {
            t.insert(&[n, p], s.coeff(n, p));
        }
    }
    t
}

fn count(cmd: &CountCommand, fmt: Format) -> Result<String> {
    let table = match cmd {
        CountCommand::Quad(a) => uni_table(&quad_counts(a.max_n)?),
        CountCommand::Tri(a) => uni_table(&tri_counts(a.max_n)?),
        CountCommand::QuadBoundary(a) => {
            need(a.max_n)?;
            bi_table(&quad_boundary_table(a.max_n)?)
        }
        CountCommand::TriBoundary(a) => {
            need(a.max_n)?;
            let t = tri_boundary_table(a.max_n)?;
            let table = bi_table(&t.series);
            if fmt == Format::Json {
                let filled: Vec<Value> = t
                    .annotations
                    .iter()
                    .map(|a| {
                        let source = match a.source {
                            CellSource::Seed => "seed",
                            CellSource::OracleFilled => "oracle",
                        };
                        json!({ "n": a.n, "p": a.p, "source": source })
                    })
                    .collect();
                let mut v = table.to_json();
                v["filled"] = Value::Array(filled);
                return Ok(pretty(&v));
            }
            table
        }
        CountCommand::QuadTwo(a) => two(Family::Quad, a)?,
        CountCommand::TriTwo(a) => two(Family::Tri, a)?,
    };
    Ok(render_table(&table, fmt))
}

fn two(family: Family, a: &TwoArgs) -> Result<CountTable> {
    if a.n < 1 || a.p < 1 || a.q < 1 {
        return Err(usage("--n, --p and --q must all be positive"));
    }
    let full = match family {
        Family::Quad => quad_two_boundary(a.n, a.p, a.q)?,
        Family::Tri => tri_two_boundary(a.n, a.p, a.q)?,
    };
    let mut t = CountTable::new(&["n", "p", "q"]);
    let key = [a.n, a.p, a.q];
    let v = full.get(&key).cloned().unwrap_or_default();
    t.insert(&key, v);
    Ok(t)
}

fn verify(identity: &str, order: usize, fmt: Format) -> Result<Outcome> {
    let reports = if identity == "all" {
        verify_all(order, ExecMode::default())?
    } else {
        vec![verify_identity(identity, order)?]
    };
    let code = if reports.iter().all(IdentityReport::passed) { EXIT_OK } else { EXIT_MISMATCH };
    let text = match fmt {
        Format::Json if identity == "all" => {
            pretty(&Value::Array(reports.iter().map(IdentityReport::to_json).collect()))
        }
        Format::Json => pretty(&reports[0].to_json()),
        Format::Csv => {
            let mut s = String::from("identity,order,status,n,p,lhs,rhs\n");
            for r in &reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let fail = match &r.first_failure {
                    Some(f) => {
                        let p = f.p.map(|p| p.to_string()).unwrap_or_default();
                        format!("{},{p},{},{}", f.n, f.lhs, f.rhs)
                    }
                    None => ",,,".into(),
                };
                s.push_str(&format!("{},{},{status},{fail}\n", r.identity, r.order));
            }
            s
        }
    };
    Ok(Outcome { text, code, notes: Vec::new() })
}

fn compare(family: Family, max_n: usize, fmt: Format) -> Result<Outcome> {
    let r: CompareReport = oracle_compare(family, max_n, ExecMode::default())?;
    let status = if r.mismatch.is_none() { "agree" } else { "mismatch" };
    let code = if r.mismatch.is_none() { EXIT_OK } else { EXIT_MISMATCH };
    let mut notes = Vec::new();
    let text = match fmt {
        Format::Json => {
            let mismatch = r.mismatch.as_ref().map(|m| {
                let values: serde_json::Map<String, Value> =
                    m.values.iter().map(|(k, v)| ((*k).to_string(), json!(v.to_string()))).collect();
                json!({ "n": m.n, "p": m.p, "values": values })
            });
            pretty(&json!({
                "family": family.name(),
                "max_n": r.max_n,
                "cells": r.cells,
                "status": status,
                "mismatch": mismatch,
            }))
        }
        Format::Csv => {
            format!("family,max_n,cells,status\n{},{},{},{status}\n", family.name(), r.max_n, r.cells)
        }
    };
    if let Some(m) = &r.mismatch {
        let values: Vec<String> = m.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        notes.push(format!("first mismatch at n={} p={}: {}", m.n, m.p, values.join(" ")));
    }
    Ok(Outcome { text, code, notes })
}

fn roundtrip(family: Family, max_n: usize, fmt: Format) -> Result<Outcome> {
    let r: RoundTripReport = oracle_roundtrip(family, max_n, ExecMode::default())?;
    let status = if r.passed() { "pass" } else { "fail" };
    let code = if r.passed() { EXIT_OK } else { EXIT_MISMATCH };
    let text = match fmt {
        Format::Json => pretty(&json!({
            "family": family.name(),
            "max_n": max_n,
            "decompositions": r.decompositions,
            "marked_decompositions": r.marked_decompositions,
            "maps": r.maps,
            "status": status,
            "failures": r.failures,
        })),
        Format::Csv => format!(
            "family,max_n,decompositions,marked_decompositions,maps,status\n{},{max_n},{},{},{},{status}\n",
            family.name(),
            r.decompositions,
            r.marked_decompositions,
            r.maps
        ),
    };
    Ok(Outcome { text, code, notes: r.failures.clone() })
}
