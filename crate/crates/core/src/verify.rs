//! Independent checks of engine output. Only the graph type and the exact
//! solvers are shared with the engine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::CatlinResult;
use crate::graph::{Coloring, Graph};
use crate::solvers::{alpha_and_witness, brute_chromatic, CapacityError, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Finding {
    EdgeConflict {
        u: usize,
        v: usize,
        color: usize,
    },
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        d: usize,
    },
    WrongLength {
        expected: usize,
        found: usize,
    },
    TooManyColors {
        used: usize,
        d: usize,
    },
    BigClassSize {
        class: usize,
        reported: usize,
        actual: usize,
        alpha: usize,
    },
    ChromaticAboveD {
        chi: usize,
        d: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub proper: bool,
    pub colors_used: usize,
    pub class_sizes: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catlin_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brooks_ok: Option<bool>,
    pub failures: Vec<Finding>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_proper(g: &Graph, c: &Coloring, d: usize) -> VerificationReport {
    let mut report = VerificationReport::default();
    if c.len() != g.n() {
        report.failures.push(Finding::WrongLength {
            expected: g.n(),
            found: c.len(),
        });
        return report;
    }
    for (v, &color) in c.colors().iter().enumerate() {
        if !(1..=d).contains(&color) {
            report.failures.push(Finding::ColorOutOfRange { vertex: v, color, d });
        }
        *report.class_sizes.entry(color).or_insert(0) += 1;
    }
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            report.failures.push(Finding::EdgeConflict {
                u,
                v,
                color: c.color(u),
            });
        }
    }
    report.proper = !report
        .failures
        .iter()
        .any(|f| matches!(f, Finding::EdgeConflict { .. }));
    report.colors_used = report.class_sizes.len();
    if report.colors_used > d {
        report.failures.push(Finding::TooManyColors {
            used: report.colors_used,
            d,
        });
    }
    report
}

/// Proper, at most `d` colors, and the reported big class has exactly α(G)
/// vertices.
pub fn verify_catlin(
    g: &Graph,
    r: &CatlinResult,
    d: usize,
    limits: &Limits,
) -> Result<VerificationReport, CapacityError> {
    let alpha = alpha_and_witness(g, limits)?.alpha;
    let mut report = verify_proper(g, &r.coloring, d);
    report.alpha = Some(alpha);
    // recount rather than trust the result's own numbers
    let actual = if r.coloring.len() == g.n() {
        r.coloring.class_size(r.big_class)
    } else {
        0
    };
    if actual != r.big_class_size || actual != alpha {
        report.failures.push(Finding::BigClassSize {
            class: r.big_class,
            reported: r.big_class_size,
            actual,
            alpha,
        });
    }
    report.catlin_ok = Some(report.ok());
    Ok(report)
}

/// χ(G) <= d by exhaustive search, and `c` uses at most `d` colors.
pub fn verify_brooks(g: &Graph, c: &Coloring, d: usize, limits: &Limits) -> Result<VerificationReport, CapacityError> {
    let chi = brute_chromatic(g, limits)?;
    let mut report = verify_proper(g, c, d);
    report.chi = Some(chi);
    if chi > d {
        report.failures.push(Finding::ChromaticAboveD { chi, d });
    }
    report.brooks_ok = Some(report.ok());
    Ok(report)
}
