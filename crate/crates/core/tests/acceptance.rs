//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use catlin::engine::{CliqueCase, Step};
use catlin::generators::{gnp, named, random_triangle_free_subcubic};
use catlin::io::{decode_graph6, encode_graph6, parse_dimacs, write_dimacs};
use catlin::solvers::{all_maximum_independent_sets, brute_chromatic, perfect_color_matching, MatchingProblem};
use catlin::verify::{verify_brooks, verify_catlin};
use catlin::{validate_instance, CatlinError, Engine, Graph, Limits, VertexSet};

const CORPUS_SIZE: u64 = 10_000;
const CORPUS_SEED: u64 = 0x00C0_FFEE;
const PROBABILITIES: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
const PALETTES: [usize; 3] = [3, 4, 5];
const ALPHA_AUDIT_LIMIT: usize = 14;
const TFREE_COUNT: u64 = 1_000;
const TFREE_SEED: u64 = 0x7F_4EE0;
const CODEC_COUNT: u64 = 1_000;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Instance `i` of the gnp corpus: n cycles through 4..=12, p through
/// 0.1..=0.6, each with its own seed.
fn corpus_graph(i: u64) -> Graph {
    let n = 4 + (i % 9) as usize;
    let p = PROBABILITIES[((i / 9) % 6) as usize];
    gnp(n, p, CORPUS_SEED.wrapping_add(i)).expect("p in range")
}

fn g6(g: &Graph) -> String {
    encode_graph6(g).unwrap_or_else(|e| e.to_string())
}

struct CorpusStats {
    valid: usize,
    skipped: usize,
    failures: Vec<String>,
    brooks_failures: Vec<String>,
    clique_steps: usize,
    audited: usize,
    audit_failures: Vec<String>,
    cases: [usize; 5],
}

fn run_corpus() -> CorpusStats {
    let limits = Limits::default();
    let engine = Engine::new(limits).with_alpha_audit(ALPHA_AUDIT_LIMIT);
    let mut s = CorpusStats {
        valid: 0,
        skipped: 0,
        failures: Vec::new(),
        brooks_failures: Vec::new(),
        clique_steps: 0,
        audited: 0,
        audit_failures: Vec::new(),
        cases: [0; 5],
    };
    for i in 0..CORPUS_SIZE {
        let g = corpus_graph(i);
        for d in PALETTES {
            if validate_instance(&g, d, &limits).is_err() {
                s.skipped += 1;
                continue;
            }
            s.valid += 1;
            let result = match engine.color(&g, d) {
                Ok(r) => r,
                Err(
                    e @ CatlinError::Internal {
                        stage: "clique-alpha-audit",
                        ..
                    },
                ) => {
                    s.audit_failures.push(format!("{} d={d}: {e}", g6(&g)));
                    continue;
                }
                Err(e) => {
                    s.failures.push(format!("{} d={d}: {e}", g6(&g)));
                    continue;
                }
            };
            for r in &result.trace {
                if let Step::Clique {
                    case, alpha_audited, ..
                } = &r.step
                {
                    s.clique_steps += 1;
                    s.audited += usize::from(*alpha_audited);
                    let idx = match case {
                        CliqueCase::MissingNeighbor => 0,
                        CliqueCase::Case1 => 1,
                        CliqueCase::Case2 => 2,
                        CliqueCase::ForcedNonmono => 3,
                        CliqueCase::ForcedNonmonoUnverified => 4,
                    };
                    s.cases[idx] += 1;
                }
            }
            match verify_catlin(&g, &result, d, &limits) {
                Ok(rep) if rep.catlin_ok == Some(true) => {}
                Ok(rep) => s.failures.push(format!("{} d={d}: {:?}", g6(&g), rep.failures)),
                Err(e) => s.failures.push(format!("{} d={d}: {e}", g6(&g))),
            }
            match verify_brooks(&g, &result.coloring, d, &limits) {
                Ok(rep) if rep.brooks_ok == Some(true) && rep.colors_used <= d => {}
                Ok(rep) => s.brooks_failures.push(format!("{} d={d}: {:?}", g6(&g), rep.failures)),
                Err(e) => s.brooks_failures.push(format!("{} d={d}: {e}", g6(&g))),
            }
        }
    }
    s
}

fn first(v: &[String]) -> String {
    v.first().cloned().unwrap_or_default()
}

fn criterion_theorem(s: &CorpusStats) -> Outcome {
    Outcome::new(
        s.failures.is_empty() && s.valid > 0,
        format!(
            "{} valid instances ({} skipped), {} failures {}",
            s.valid,
            s.skipped,
            s.failures.len(),
            first(&s.failures)
        ),
    )
}

fn criterion_brooks(s: &CorpusStats) -> Outcome {
    Outcome::new(
        s.brooks_failures.is_empty() && s.valid > 0,
        format!(
            "chi <= d and colors_used <= d on {} instances, {} failures {}",
            s.valid,
            s.brooks_failures.len(),
            first(&s.brooks_failures)
        ),
    )
}

fn criterion_alpha_bookkeeping(s: &CorpusStats) -> Outcome {
    Outcome::new(
        s.audit_failures.is_empty() && s.audited == s.clique_steps && s.audited > 0,
        format!(
            "{} clique steps audited of {} (missing {}, case1 {}, case2 {}, forced {}, forced-unverified {}), {} mismatches {}",
            s.audited,
            s.clique_steps,
            s.cases[0],
            s.cases[1],
            s.cases[2],
            s.cases[3],
            s.cases[4],
            s.audit_failures.len(),
            first(&s.audit_failures)
        ),
    )
}

#[derive(Default)]
struct BaseTally {
    runs: usize,
    initial_odd: usize,
    augmentations: usize,
    fallbacks: usize,
    failures: Vec<String>,
}

impl BaseTally {
    fn record(&mut self, g: &Graph, start: Option<&VertexSet>) {
        let engine = Engine::default();
        let label = match start {
            Some(s) => format!("{} from {:?}", g6(g), s.as_slice()),
            None => g6(g),
        };
        let result = match start {
            Some(s) => engine.base_case_color_from(g, s),
            None => engine.base_case_color(g),
        };
        self.runs += 1;
        let r = match result {
            Ok(r) => r,
            Err(e) => {
                self.failures.push(format!("{label}: {e}"));
                return;
            }
        };
        let Step::Base {
            initial_odd_cycles,
            augmentations,
            fallback,
            final_odd_cycles,
            ..
        } = &r.trace[0].step
        else {
            self.failures.push(format!("{label}: no base step"));
            return;
        };
        self.augmentations += augmentations.len();
        self.initial_odd += initial_odd_cycles;
        if *fallback {
            self.fallbacks += 1;
            eprintln!("fallback activated on {label}");
        }
        let decreasing = augmentations.iter().all(|a| a.odd_cycles_after < a.odd_cycles_before);
        if augmentations.len() > *initial_odd_cycles || *final_odd_cycles != 0 || !decreasing {
            self.failures.push(format!(
                "{label}: {} augmentations for {} odd cycles, final {}",
                augmentations.len(),
                initial_odd_cycles,
                final_odd_cycles
            ));
        }
    }
}

/// Base case on the triangle-free corpus, once from the engine's own
/// maximum independent set and once from every maximum independent set that
/// leaves an odd cycle behind.
fn criterion_base_case() -> Outcome {
    let limits = Limits::default();
    let mut default_start = BaseTally::default();
    let mut odd_starts = BaseTally::default();
    for i in 0..TFREE_COUNT {
        let n = 1 + (i % 20) as usize;
        let g = random_triangle_free_subcubic(n, TFREE_SEED.wrapping_add(i));
        default_start.record(&g, None);
        for start in all_maximum_independent_sets(&g, &limits).unwrap() {
            let (rest, _) = g.induced_delete(&start);
            if rest.path_cycle_decomposition().map_or(true, |d| d.odd_cycle_count > 0) {
                odd_starts.record(&g, Some(&start));
            }
        }
    }
    let pass = default_start.failures.is_empty() && odd_starts.failures.is_empty();
    let mut failures = default_start.failures.clone();
    failures.extend(odd_starts.failures.iter().cloned());
    Outcome::new(
        pass,
        format!(
            "{TFREE_COUNT} graphs: default start {} odd cycles / {} augmentations; \
             {} odd-leaving starts: {} odd cycles / {} augmentations; {} fallback activations, {} failures {}",
            default_start.initial_odd,
            default_start.augmentations,
            odd_starts.runs,
            odd_starts.initial_odd,
            odd_starts.augmentations,
            default_start.fallbacks + odd_starts.fallbacks,
            failures.len(),
            first(&failures)
        ),
    )
}

fn criterion_golden_trace() -> Outcome {
    let g = named("pc5").unwrap();
    let forced = VertexSet::new(vec![5, 6, 7, 8, 9], 10).unwrap();
    let r = match Engine::default().base_case_color_from(&g, &forced) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let Step::Base { augmentations, .. } = &r.trace[0].step else {
        return Outcome::new(false, "no base step");
    };
    let path_ok = augmentations.len() == 1 && augmentations[0].path == [0, 5];
    let set_ok = augmentations.first().map(|a| a.result.as_slice()) == Some(&[0, 6, 7, 8, 9][..]);
    let i2 = VertexSet::new(vec![0, 6, 7, 8, 9], 10).unwrap();
    let (rest, map) = g.induced_delete(&i2);
    let dec = rest.path_cycle_decomposition().unwrap();
    let paths: Vec<Vec<usize>> = dec
        .paths
        .iter()
        .map(|p| p.iter().map(|&v| map.inverse[v]).collect())
        .collect();
    let decomposition_ok =
        paths == vec![vec![1, 2, 3, 4]] && map.lift(&dec.isolated).as_slice() == [5] && dec.cycles.is_empty();
    let class_ok = r.big_class == 3 && r.coloring.class(3) == [0, 6, 7, 8, 9] && r.big_class_size == 5;
    Outcome::new(
        path_ok && set_ok && decomposition_ok && class_ok,
        format!(
            "P0 {:?}, I' {:?}, G\\I' paths {paths:?} isolated {:?}, class 3 = {:?}",
            augmentations.first().map(|a| &a.path),
            augmentations.first().map(|a| &a.result),
            map.lift(&dec.isolated).as_slice(),
            r.coloring.class(3)
        ),
    )
}

fn criterion_named() -> Outcome {
    let limits = Limits::default();
    let mut notes = Vec::new();
    let mut ok = true;

    let petersen = named("petersen").unwrap();
    match catlin::catlin_color(&petersen, 3) {
        Ok(r) => {
            let chi = brute_chromatic(&petersen, &limits).unwrap();
            ok &= r.big_class_size == 4 && chi == 3;
            notes.push(format!("petersen big {} chi {chi}", r.big_class_size));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("petersen: {e}"));
        }
    }

    let paw = named("paw").unwrap();
    match catlin::catlin_color(&paw, 3) {
        Ok(r) => {
            let clique = matches!(r.trace[0].step, Step::Clique { .. });
            ok &= r.big_class_size == 2 && clique;
            notes.push(format!("paw big {} via clique case {clique}", r.big_class_size));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("paw: {e}"));
        }
    }

    let k4 = named("k4").unwrap();
    match catlin::catlin_color(&k4, 4) {
        Ok(r) => {
            let clique = matches!(r.trace[0].step, Step::Clique { reduced_n: 0, .. });
            ok &= r.big_class_size == 1 && clique;
            notes.push(format!(
                "k4 big {} via clique case with empty G' {clique}",
                r.big_class_size
            ));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("k4: {e}"));
        }
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_matching() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for d in [3usize, 4, 5] {
        let total = (d + 1).pow(d as u32);
        for code in 0..total {
            // digit 0 = no forbidden color, digit c = forbid c
            let mut x = code;
            let forbidden: Vec<Option<usize>> = (0..d)
                .map(|_| {
                    let digit = x % (d + 1);
                    x /= d + 1;
                    (digit > 0).then_some(digit)
                })
                .collect();
            let monochromatic = forbidden[0].is_some() && forbidden.iter().all(|f| *f == forbidden[0]);
            let problem = MatchingProblem {
                palette: d,
                forbidden: forbidden.clone(),
            };
            let result = perfect_color_matching(&problem);
            let valid = result.as_ref().is_none_or(|m| {
                let mut seen = vec![false; d + 1];
                m.assignment.iter().enumerate().all(|(i, &c)| {
                    (1..=d).contains(&c) && forbidden[i] != Some(c) && !std::mem::replace(&mut seen[c], true)
                })
            });
            if result.is_some() == monochromatic || !valid {
                failures.push(format!("d={d} {forbidden:?}"));
            }
            checked += 1;
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{checked} forbidden lists, {} failures {}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn criterion_codecs() -> Outcome {
    let mut failures = Vec::new();
    for (text, expected) in [
        ("@", Graph::empty(1)),
        ("A_", Graph::complete(2)),
        ("A?", Graph::empty(2)),
    ] {
        match decode_graph6(text) {
            Ok(g) if g == expected && encode_graph6(&g).ok().as_deref() == Some(text) => {}
            other => failures.push(format!("{text}: {other:?}")),
        }
    }
    for i in 0..CODEC_COUNT {
        let n = (i % 41) as usize;
        let p = ((i * 7) % 10) as f64 / 10.0;
        let g = gnp(n, p, 0xC0DEC + i).unwrap();
        let text = encode_graph6(&g).unwrap();
        let back = decode_graph6(&text).unwrap();
        if back != g || encode_graph6(&back).unwrap() != text {
            failures.push(format!("graph6 {text}"));
        }
        let col = write_dimacs(&g);
        match parse_dimacs(&col) {
            Ok(parsed) if parsed.graph == g && write_dimacs(&parsed.graph) == col => {}
            _ => failures.push(format!("dimacs {text}")),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "3 literals + {CODEC_COUNT} random graphs, {} failures {}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = run_corpus();
    let corpus_secs = start.elapsed().as_secs_f64();
    let results = [
        ("1 theorem property suite", criterion_theorem(&corpus)),
        ("2 Brooks corollary", criterion_brooks(&corpus)),
        ("3 base-case augmentation suite", criterion_base_case()),
        ("4 worked-example golden trace", criterion_golden_trace()),
        ("5 named results", criterion_named()),
        ("6 clique-case alpha bookkeeping", criterion_alpha_bookkeeping(&corpus)),
        ("7 matching property", criterion_matching()),
        ("8 codec round-trips", criterion_codecs()),
    ];
    let mut all = true;
    for (name, outcome) in &results {
        all &= outcome.pass;
        println!(
            "[{}] criterion {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!(
        "corpus phase {corpus_secs:.1}s, total {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
