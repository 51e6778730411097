//! The theorem corpus: seeded gnp graphs checked at every valid d in 3..=5.

use catlin::generators::gnp;
use catlin::io::encode_graph6;
use catlin::verify::{verify_brooks, verify_catlin, Finding};
use catlin::{validate_instance, CatlinResult, Coloring, Engine, Graph, Limits};
use rayon::prelude::*;
use serde::Serialize;

const PROBABILITIES: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
const PALETTES: [usize; 3] = [3, 4, 5];

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub count: u64,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
    pub inject_fault: bool,
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub index: u64,
    pub d: usize,
    pub graph6: String,
    pub error: Option<String>,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Serialize)]
pub struct SuiteSummary {
    pub schema_version: u32,
    pub count: u64,
    pub sizes: [usize; 2],
    pub seed: u64,
    pub instances: usize,
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub brooks_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Instance `i`: n cycles through the size range, p through 0.1..=0.6.
pub fn corpus_graph(cfg: &SuiteConfig, i: u64) -> Graph {
    let span = (cfg.max_n - cfg.min_n + 1) as u64;
    let n = cfg.min_n + (i % span) as usize;
    let p = PROBABILITIES[((i / span) % 6) as usize];
    gnp(n, p, cfg.seed.wrapping_add(i)).expect("p in range")
}

enum Outcome {
    Skipped,
    Passed { brooks: bool },
    Failed(Counterexample),
}

/// Overwrites one endpoint of the first edge with the other's color.
fn corrupt(g: &Graph, r: &mut CatlinResult) {
    if let Some((u, v)) = g.edges().next() {
        let mut colors = r.coloring.colors().to_vec();
        colors[u] = colors[v];
        r.coloring = Coloring::new(r.coloring.palette(), colors);
    }
}

fn run_instance(cfg: &SuiteConfig, limits: &Limits, i: u64, d: usize) -> Outcome {
    let g = corpus_graph(cfg, i);
    if validate_instance(&g, d, limits).is_err() {
        return Outcome::Skipped;
    }
    let fail = |error: Option<String>, findings: Vec<Finding>| {
        Outcome::Failed(Counterexample {
            index: i,
            d,
            graph6: encode_graph6(&g).unwrap_or_default(),
            error,
            findings,
        })
    };
    let mut r = match Engine::new(*limits).color(&g, d) {
        Ok(r) => r,
        Err(e) => return fail(Some(e.to_string()), Vec::new()),
    };
    if cfg.inject_fault {
        corrupt(&g, &mut r);
    }
    let mut findings = match verify_catlin(&g, &r, d, limits) {
        Ok(report) => report.failures,
        Err(e) => return fail(Some(e.to_string()), Vec::new()),
    };
    let brooks = g.n() <= limits.chromatic;
    if brooks {
        match verify_brooks(&g, &r.coloring, d, limits) {
            Ok(report) => findings.extend(
                report
                    .failures
                    .into_iter()
                    .filter(|f| matches!(f, Finding::ChromaticAboveD { .. })),
            ),
            Err(e) => return fail(Some(e.to_string()), findings),
        }
    }
    if findings.is_empty() {
        Outcome::Passed { brooks }
    } else {
        fail(None, findings)
    }
}

pub fn run(cfg: &SuiteConfig, limits: &Limits) -> SuiteSummary {
    let jobs: Vec<(u64, usize)> = (0..cfg.count)
        .flat_map(|i| PALETTES.iter().map(move |&d| (i, d)))
        .collect();
    let outcomes: Vec<Outcome> = jobs.par_iter().map(|&(i, d)| run_instance(cfg, limits, i, d)).collect();
    let mut s = SuiteSummary {
        schema_version: crate::SCHEMA_VERSION,
        count: cfg.count,
        sizes: [cfg.min_n, cfg.max_n],
        seed: cfg.seed,
        instances: 0,
        skipped: 0,
        passed: 0,
        failed: 0,
        brooks_checked: 0,
        counterexamples: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Skipped => s.skipped += 1,
            Outcome::Passed { brooks } => {
                s.instances += 1;
                s.passed += 1;
                s.brooks_checked += usize::from(brooks);
            }
            Outcome::Failed(c) => {
                s.instances += 1;
                s.failed += 1;
                s.counterexamples.push(c);
            }
        }
    }
    s
}
