mod input;
mod suite;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use catlin::engine::{StepRecord, TraceSummary};
use catlin::io::encode_graph6;
use catlin::solvers::{alpha_and_witness, brute_chromatic};
use catlin::verify::{verify_catlin, VerificationReport};
use catlin::{CatlinError, Engine, Limits};
use clap::{Parser, Subcommand};
use serde::Serialize;

use input::{Descriptor, Format, InputArgs};
use suite::SuiteConfig;

pub const SCHEMA_VERSION: u32 = 1;

const EXIT_FAILURE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Certified d-colorings whose largest class is a maximum independent set.
#[derive(Debug, Parser)]
#[command(name = "catlin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Color a graph with d colors, one class of size alpha(G)
    Color {
        #[command(flatten)]
        input: InputArgs,
        /// Palette size; the graph needs max degree <= d and no K_{d+1}
        #[arg(short = 'd', long = "palette")]
        d: usize,
        /// Check the result against the exact alpha solver
        #[arg(long)]
        verify: bool,
        /// Include the full step trace
        #[arg(long)]
        trace: bool,
    },
    /// Run the seeded random corpus and report failures
    Suite {
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        /// Vertex-count range, e.g. 4..12
        #[arg(long, default_value = "4..12")]
        sizes: String,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// Corrupt every coloring before it is checked
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print the independence number
    Alpha {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the chromatic number
    Chi {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Convert between graph formats
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        out: String,
        /// Output format; inferred from the --out extension when omitted
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Serialize)]
struct RunRecord {
    schema_version: u32,
    input: Descriptor,
    n: usize,
    d: usize,
    coloring: Vec<usize>,
    big_class: usize,
    big_class_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proper: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<VerificationReport>,
    summary: TraceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<StepRecord>>,
    elapsed_ms: f64,
}

fn limits() -> Result<Limits, String> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var("CATLIN_MAX_N") {
        limits.mis = raw
            .trim()
            .parse()
            .map_err(|_| format!("CATLIN_MAX_N: expected a vertex count, got {raw:?}"))?;
    }
    Ok(limits)
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

/// Writes pretty JSON to stdout; a closed pipe is not an error.
fn print_json<T: Serialize>(value: &T) {
    let mut out = io::stdout().lock();
    if serde_json::to_writer_pretty(&mut out, value).is_ok() {
        let _ = writeln!(out);
    }
}

fn cmd_color(input: &InputArgs, d: usize, verify: bool, trace: bool, limits: Limits) -> ExitCode {
    let (g, descriptor) = match input.load() {
        Ok(x) => x,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    let start = Instant::now();
    let result = Engine::new(limits).color(&g, d);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let r = match result {
        Ok(r) => r,
        Err(e @ CatlinError::Precondition(_)) => return fail(EXIT_PRECONDITION, e),
        Err(CatlinError::Internal { stage, detail, graph }) => {
            eprintln!("internal invariant violated in {stage}: {detail}");
            eprintln!("failing graph (graph6): {}", encode_graph6(&graph).unwrap_or_default());
            return ExitCode::from(EXIT_INTERNAL);
        }
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    let report = if verify {
        match verify_catlin(&g, &r, d, &limits) {
            Ok(report) => Some(report),
            Err(e) => return fail(EXIT_FAILURE, e),
        }
    } else {
        None
    };
    let verified_ok = report.as_ref().is_none_or(VerificationReport::ok);
    let record = RunRecord {
        schema_version: SCHEMA_VERSION,
        input: descriptor,
        n: g.n(),
        d,
        coloring: r.coloring.colors().to_vec(),
        big_class: r.big_class,
        big_class_size: r.big_class_size,
        alpha: report.as_ref().and_then(|rep| rep.alpha),
        proper: report.as_ref().map(|rep| rep.proper),
        summary: r.summary(),
        trace: trace.then(|| r.trace.clone()),
        report,
        elapsed_ms,
    };
    print_json(&record);
    if verified_ok {
        ExitCode::SUCCESS
    } else {
        fail(EXIT_INTERNAL, "verification failed")
    }
}

fn parse_sizes(raw: &str) -> Option<(usize, usize)> {
    let (lo, hi) = raw.split_once("..")?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let (lo, hi) = (lo.trim().parse().ok()?, hi.trim().parse().ok()?);
    (lo <= hi).then_some((lo, hi))
}

fn cmd_suite(count: u64, sizes: &str, seed: u64, inject_fault: bool, limits: Limits) -> ExitCode {
    let Some((min_n, max_n)) = parse_sizes(sizes) else {
        return fail(EXIT_FAILURE, format!("bad --sizes {sizes:?}, expected LO..HI"));
    };
    let cfg = SuiteConfig {
        count,
        min_n,
        max_n,
        seed,
        inject_fault,
    };
    let start = Instant::now();
    let summary = suite::run(&cfg, &limits);
    print_json(&summary);
    eprintln!(
        "{} passed, {} failed, {} skipped in {:.1}s",
        summary.passed,
        summary.failed,
        summary.skipped,
        start.elapsed().as_secs_f64()
    );
    for c in &summary.counterexamples {
        eprintln!("counterexample #{} d={}: {}", c.index, c.d, c.graph6);
    }
    if summary.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cmd_number(input: &InputArgs, chi: bool, limits: Limits) -> ExitCode {
    let g = match input.load() {
        Ok((g, _)) => g,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    let value = if chi {
        brute_chromatic(&g, &limits)
    } else {
        alpha_and_witness(&g, &limits).map(|r| r.alpha)
    };
    match value {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_FAILURE, e),
    }
}

fn cmd_convert(input: &InputArgs, out: &str, to: Option<Format>) -> ExitCode {
    let g = match input.load() {
        Ok((g, _)) => g,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    let format = to.unwrap_or_else(|| Format::from_path(Path::new(out)));
    let text = match input::render(&g, format) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    match fs::write(out, text) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_FAILURE, format!("{out}: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match limits() {
        Ok(l) => l,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    match &cli.command {
        Command::Color {
            input,
            d,
            verify,
            trace,
        } => cmd_color(input, *d, *verify, *trace, limits),
        Command::Suite {
            count,
            sizes,
            seed,
            inject_fault,
        } => cmd_suite(*count, sizes, *seed, *inject_fault, limits),
        Command::Alpha { input } => cmd_number(input, false, limits),
        Command::Chi { input } => cmd_number(input, true, limits),
        Command::Convert { input, out, format } => cmd_convert(input, out, *format),
    }
}
