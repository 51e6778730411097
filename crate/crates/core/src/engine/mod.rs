//! The coloring engine.
//!
//! Every valid instance `(G, d)` (with `d >= 3`, `Δ(G) <= d`, no `K_{d+1}`)
//! is colored by recursion on the graph:
//!
//! * if `G` contains a `K_d`, the clique is removed, the rest is colored
//!   (possibly after adding one edge between outside neighbors of the
//!   clique) and the clique is put back by a palette matching;
//! * otherwise, if `d >= 4`, a maximum independent set `I` is removed, the
//!   rest is colored with `d - 1` colors and `I` takes color `d`;
//! * otherwise `d = 3` and `G` is triangle-free: a maximum independent set
//!   is improved by alternating-path exchanges until `G \ I` is bipartite.
//!
//! Each stage checks its own postconditions and reports
//! [`CatlinError::Internal`] when one fails, so a successful result carries a
//! proper coloring whose reported big class has size exactly α(G).

mod base;
mod clique;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Coloring, Graph};
use crate::solvers::{alpha_and_witness, find_clique_of_size, CapacityError, Limits};

pub use base::{alternating_paths, augment, max_alternating_path, AlternatingPath, Augmentation};
pub use clique::{build_clique_witness, extend_coloring, reduce_clique_case, CliqueWitness, ReducedInstance};

/// Which hypothesis of a coloring instance failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Hypothesis {
    PaletteTooSmall { d: usize },
    DegreeTooHigh { vertex: usize, degree: usize, d: usize },
    ContainsClique { d: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionViolation {
    pub which: Hypothesis,
    /// Offending vertices: the clique, or the high-degree vertex and its neighbors.
    pub witness: Vec<usize>,
}

impl fmt::Display for PreconditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.which {
            Hypothesis::PaletteTooSmall { d } => write!(f, "palette size d = {d} is below 3"),
            Hypothesis::DegreeTooHigh { vertex, degree, d } => {
                write!(f, "vertex {vertex} has degree {degree} > d = {d}")
            }
            Hypothesis::ContainsClique { d } => write!(
                f,
                "graph contains K_{} = K_{{d+1}} on vertices {:?}",
                d + 1,
                self.witness
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatlinError {
    #[error("precondition violated: {0}")]
    Precondition(PreconditionViolation),
    #[error("internal invariant violated in {stage}: {detail}")]
    Internal {
        stage: &'static str,
        detail: String,
        /// The graph the failing stage was working on.
        graph: Graph,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

impl CatlinError {
    pub(crate) fn internal(stage: &'static str, detail: impl Into<String>, graph: &Graph) -> Self {
        CatlinError::Internal {
            stage,
            detail: detail.into(),
            graph: graph.clone(),
        }
    }
}

pub type Result<T, E = CatlinError> = std::result::Result<T, E>;

/// A graph together with a palette size satisfying the coloring hypotheses.
#[derive(Debug, Clone, Copy)]
pub struct ColoringInstance<'a> {
    pub graph: &'a Graph,
    pub d: usize,
}

pub fn validate_instance<'a>(g: &'a Graph, d: usize, limits: &Limits) -> Result<ColoringInstance<'a>> {
    let violation = |which, witness| Err(CatlinError::Precondition(PreconditionViolation { which, witness }));
    if d < 3 {
        return violation(Hypothesis::PaletteTooSmall { d }, Vec::new());
    }
    if let Some(v) = g.vertex_above_degree(d) {
        let mut witness = vec![v];
        witness.extend_from_slice(g.neighbors(v));
        return violation(
            Hypothesis::DegreeTooHigh {
                vertex: v,
                degree: g.degree(v),
                d,
            },
            witness,
        );
    }
    if let Some(k) = find_clique_of_size(g, d + 1, limits)? {
        return violation(Hypothesis::ContainsClique { d }, k.as_slice().to_vec());
    }
    Ok(ColoringInstance { graph: g, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueCase {
    /// Some clique vertex has no outside neighbor.
    MissingNeighbor,
    /// A maximum independent set of `G'` avoids an outside neighbor.
    Case1,
    /// Every maximum independent set of `G'` contains all outside neighbors.
    Case2,
    /// Two outside neighbors are adjacent, so they never share a color.
    ForcedNonmono,
    /// No admissible edge survived the checks; the extension must confirm
    /// that the outside neighbors are not monochromatic.
    ForcedNonmonoUnverified,
}

/// One recursion step of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Step {
    Empty {
        d: usize,
    },
    Base {
        n: usize,
        initial_independent_set: Vec<usize>,
        initial_odd_cycles: usize,
        augmentations: Vec<Augmentation>,
        /// Candidate paths rejected before an accepted augmentation.
        rejected_candidates: usize,
        fallback: bool,
        final_odd_cycles: usize,
    },
    MisRemoval {
        n: usize,
        d: usize,
        removed: usize,
    },
    Clique {
        n: usize,
        d: usize,
        clique: Vec<usize>,
        case: CliqueCase,
        reduced_n: usize,
        /// Added edge in the ids of the reduced graph.
        added_edge: Option<(usize, usize)>,
        /// Whether the α relation between `G'` and `G''` was checked exactly.
        alpha_audited: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub depth: usize,
    pub step: Step,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatlinResult {
    pub coloring: Coloring,
    pub big_class: usize,
    pub big_class_size: usize,
    pub trace: Vec<StepRecord>,
}

/// Aggregate counts over a result's trace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub base_cases: usize,
    pub mis_removals: usize,
    pub clique_cases: usize,
    pub case1: usize,
    pub case2: usize,
    pub missing_neighbor: usize,
    pub forced_nonmono: usize,
    pub augmentations: usize,
    pub rejected_candidates: usize,
    pub fallback_activations: usize,
    pub final_odd_cycles: usize,
}

impl CatlinResult {
    pub fn summary(&self) -> TraceSummary {
        let mut s = TraceSummary::default();
        for record in &self.trace {
            match &record.step {
                Step::Empty { .. } => {}
                Step::Base {
                    augmentations,
                    rejected_candidates,
                    fallback,
                    final_odd_cycles,
                    ..
                } => {
                    s.base_cases += 1;
                    s.augmentations += augmentations.len();
                    s.rejected_candidates += rejected_candidates;
                    s.fallback_activations += usize::from(*fallback);
                    s.final_odd_cycles += final_odd_cycles;
                }
                Step::MisRemoval { .. } => s.mis_removals += 1,
                Step::Clique { case, .. } => {
                    s.clique_cases += 1;
                    match case {
                        CliqueCase::MissingNeighbor => s.missing_neighbor += 1,
                        CliqueCase::Case1 => s.case1 += 1,
                        CliqueCase::Case2 => s.case2 += 1,
                        CliqueCase::ForcedNonmono | CliqueCase::ForcedNonmonoUnverified => s.forced_nonmono += 1,
                    }
                }
            }
        }
        s
    }

    pub fn alpha_audits(&self) -> usize {
        self.trace
            .iter()
            .filter(|r| {
                matches!(
                    r.step,
                    Step::Clique {
                        alpha_audited: true,
                        ..
                    }
                )
            })
            .count()
    }
}

/// Engine configuration.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    pub limits: Limits,
    /// When set, every clique-case reduction whose `G'` has at most this many
    /// vertices is checked against the exact α solver.
    pub alpha_audit_limit: Option<usize>,
}

impl Engine {
    pub fn new(limits: Limits) -> Self {
        Engine {
            limits,
            alpha_audit_limit: None,
        }
    }

    pub fn with_alpha_audit(mut self, limit: usize) -> Self {
        self.alpha_audit_limit = Some(limit);
        self
    }

    /// Colors `g` with `d` colors so that one color class is a maximum
    /// independent set.
    pub fn color(&self, g: &Graph, d: usize) -> Result<CatlinResult> {
        validate_instance(g, d, &self.limits)?;
        self.dispatch(g, d, 0)
    }

    // Recursive entry: the instance was produced by the engine itself, so a
    // failed hypothesis is a bug, not bad input.
    fn color_nested(&self, g: &Graph, d: usize, depth: usize, stage: &'static str) -> Result<CatlinResult> {
        match validate_instance(g, d, &self.limits) {
            Ok(_) => self.dispatch(g, d, depth),
            Err(CatlinError::Precondition(p)) => Err(CatlinError::internal(
                stage,
                format!("reduced instance is invalid: {p}"),
                g,
            )),
            Err(e) => Err(e),
        }
    }

    fn dispatch(&self, g: &Graph, d: usize, depth: usize) -> Result<CatlinResult> {
        if g.n() == 0 {
            return Ok(CatlinResult {
                coloring: Coloring::new(d, Vec::new()),
                big_class: d,
                big_class_size: 0,
                trace: vec![StepRecord {
                    depth,
                    step: Step::Empty { d },
                }],
            });
        }
        if let Some(k) = find_clique_of_size(g, d, &self.limits)? {
            return self.clique_case(g, d, k.as_slice(), depth);
        }
        if d >= 4 {
            self.mis_removal(g, d, depth)
        } else {
            self.base_case(g, None, depth)
        }
    }

    /// Base case entry point: `d = 3`, `Δ(G) <= 3`, `G` triangle-free.
    pub fn base_case_color(&self, g: &Graph) -> Result<CatlinResult> {
        self.check_base_hypotheses(g)?;
        self.base_case(g, None, 0)
    }

    /// Base case started from a caller-chosen maximum independent set.
    pub fn base_case_color_from(&self, g: &Graph, initial: &crate::graph::VertexSet) -> Result<CatlinResult> {
        self.check_base_hypotheses(g)?;
        let alpha = alpha_and_witness(g, &self.limits)?.alpha;
        if initial.universe() != g.n() || !g.is_independent(initial) || initial.len() != alpha {
            return Err(CatlinError::InvalidArgument(format!(
                "{:?} is not a maximum independent set (alpha = {alpha})",
                initial.as_slice()
            )));
        }
        self.base_case(g, Some(initial.clone()), 0)
    }

    fn check_base_hypotheses(&self, g: &Graph) -> Result<()> {
        validate_instance(g, 3, &self.limits)?;
        if let Some(t) = find_clique_of_size(g, 3, &self.limits)? {
            return Err(CatlinError::InvalidArgument(format!(
                "base case needs a triangle-free graph, found triangle {:?}",
                t.as_slice()
            )));
        }
        Ok(())
    }

    /// Removes a maximum independent set, colors the rest with `d - 1`
    /// colors and gives the removed set color `d`.
    pub fn mis_removal_step(&self, g: &Graph, d: usize) -> Result<CatlinResult> {
        validate_instance(g, d, &self.limits)?;
        if d < 4 {
            return Err(CatlinError::InvalidArgument(format!(
                "MIS removal needs d >= 4, got {d}"
            )));
        }
        if let Some(k) = find_clique_of_size(g, d, &self.limits)? {
            return Err(CatlinError::InvalidArgument(format!(
                "MIS removal needs a K_{d}-free graph, found {:?}",
                k.as_slice()
            )));
        }
        self.mis_removal(g, d, 0)
    }

    fn mis_removal(&self, g: &Graph, d: usize, depth: usize) -> Result<CatlinResult> {
        const STAGE: &str = "mis-removal";
        let independent = alpha_and_witness(g, &self.limits)?.witness;
        let (rest, map) = g.induced_delete(&independent);
        if let Some(v) = rest.vertex_above_degree(d - 1) {
            return Err(CatlinError::internal(
                STAGE,
                format!("G \\ I keeps degree {} at vertex {}", rest.degree(v), map.inverse[v]),
                g,
            ));
        }
        if find_clique_of_size(&rest, d, &self.limits)?.is_some() {
            return Err(CatlinError::internal(STAGE, format!("G \\ I contains K_{d}"), g));
        }
        let sub = self.color_nested(&rest, d - 1, depth + 1, STAGE)?;
        let colors = (0..g.n())
            .map(|v| match map.forward[v] {
                Some(j) => sub.coloring.color(j),
                None => d,
            })
            .collect();
        let mut trace = vec![StepRecord {
            depth,
            step: Step::MisRemoval {
                n: g.n(),
                d,
                removed: independent.len(),
            },
        }];
        trace.extend(sub.trace);
        Ok(CatlinResult {
            coloring: Coloring::new(d, colors),
            big_class: d,
            big_class_size: independent.len(),
            trace,
        })
    }

    fn clique_case(&self, g: &Graph, d: usize, clique: &[usize], depth: usize) -> Result<CatlinResult> {
        const STAGE: &str = "clique-case";
        let witness = build_clique_witness(g, clique, d)?;
        let reduced = reduce_clique_case(g, d, &witness, &self.limits)?;
        let alpha_audited = match self.alpha_audit_limit {
            Some(limit) if reduced.g2.n() <= limit => {
                reduced.audit_alpha(g, &self.limits)?;
                true
            }
            _ => false,
        };
        let record = StepRecord {
            depth,
            step: Step::Clique {
                n: g.n(),
                d,
                clique: witness.clique.clone(),
                case: reduced.case,
                reduced_n: reduced.g2.n(),
                added_edge: reduced.added_edge,
                alpha_audited,
            },
        };
        let sub = self.color_nested(&reduced.g2, d, depth + 1, STAGE)?;
        let mut result = extend_coloring(g, &sub, &witness, &reduced.relabel, d)?;
        result.trace.insert(0, record);
        Ok(result)
    }
}

/// [`Engine::color`] with default limits.
pub fn catlin_color(g: &Graph, d: usize) -> Result<CatlinResult> {
    Engine::default().color(g, d)
}
