//! Reduction and extension around a `K_d` subgraph.

use super::{CatlinError, CatlinResult, CliqueCase, Result};
use crate::graph::{Coloring, Graph, RelabelMap, VertexSet};
use crate::solvers::{
    alpha_and_witness, exists_mis_avoiding, find_clique_of_size, perfect_color_matching, Limits, MatchingProblem,
};

/// A `K_d` and, for each of its vertices, the neighbor outside the clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWitness {
    pub clique: Vec<usize>,
    /// `outside[i]` is the unique neighbor of `clique[i]` outside the clique.
    pub outside: Vec<Option<usize>>,
}

pub fn build_clique_witness(g: &Graph, clique: &[usize], d: usize) -> Result<CliqueWitness> {
    const STAGE: &str = "clique-witness";
    if clique.len() != d || !g.is_clique(clique) {
        return Err(CatlinError::InvalidArgument(format!("{clique:?} is not a K_{d}")));
    }
    let mut outside = Vec::with_capacity(d);
    for &v in clique {
        let extra: Vec<usize> = g.neighbors(v).iter().copied().filter(|w| !clique.contains(w)).collect();
        if extra.len() > 1 {
            return Err(CatlinError::internal(
                STAGE,
                format!("clique vertex {v} has outside neighbors {extra:?}"),
                g,
            ));
        }
        outside.push(extra.first().copied());
    }
    if let Some(Some(first)) = outside.first() {
        if outside.iter().all(|a| *a == Some(*first)) {
            return Err(CatlinError::internal(
                STAGE,
                format!("every clique vertex sees {first}, forming K_{}", d + 1),
                g,
            ));
        }
    }
    Ok(CliqueWitness {
        clique: clique.to_vec(),
        outside,
    })
}

/// The reduced graph `G''` on the vertex set of `G' = G - clique`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub g2: Graph,
    /// Added edge, in the ids of `G'`.
    pub added_edge: Option<(usize, usize)>,
    pub case: CliqueCase,
    /// Maps `G` to `G'`.
    pub relabel: RelabelMap,
    /// `α(G) - α(G')`: 0 in case 2, 1 otherwise. In all cases
    /// `α(G) = α(G'') + 1`.
    pub alpha_shift: usize,
}

impl ReducedInstance {
    /// Checks `α(G'') = α(G') + α_shift - 1` with the exact solver.
    pub fn audit_alpha(&self, g: &Graph, limits: &Limits) -> Result<()> {
        let (g1, _) = g.induced_delete(&self.deleted());
        let a1 = alpha_and_witness(&g1, limits)?.alpha;
        let a2 = alpha_and_witness(&self.g2, limits)?.alpha;
        if a2 + 1 != a1 + self.alpha_shift {
            return Err(CatlinError::internal(
                "clique-alpha-audit",
                format!(
                    "{:?}: alpha(G') = {a1}, alpha(G'') = {a2}, expected shift {}",
                    self.case, self.alpha_shift
                ),
                g,
            ));
        }
        Ok(())
    }

    fn deleted(&self) -> VertexSet {
        let members = (0..self.relabel.forward.len())
            .filter(|&v| self.relabel.forward[v].is_none())
            .collect();
        VertexSet::new(members, self.relabel.forward.len()).expect("ids in range")
    }
}

pub fn reduce_clique_case(g: &Graph, d: usize, w: &CliqueWitness, limits: &Limits) -> Result<ReducedInstance> {
    let clique = VertexSet::new(w.clique.clone(), g.n()).map_err(|e| CatlinError::InvalidArgument(e.to_string()))?;
    let (g1, relabel) = g.induced_delete(&clique);
    let plain = |case, alpha_shift| ReducedInstance {
        g2: g1.clone(),
        added_edge: None,
        case,
        relabel: relabel.clone(),
        alpha_shift,
    };

    if w.outside.iter().any(Option::is_none) {
        return Ok(plain(CliqueCase::MissingNeighbor, 1));
    }
    let mut targets: Vec<usize> = w
        .outside
        .iter()
        .map(|a| relabel.forward[a.expect("checked above")].expect("outside the clique"))
        .collect();
    targets.sort_unstable();
    targets.dedup();

    // Accepts the first edge whose graph keeps Δ <= d and stays K_{d+1}-free.
    let try_edges = |pairs: &mut dyn Iterator<Item = (usize, usize)>| -> Result<Option<(Graph, (usize, usize))>> {
        for (a, b) in pairs {
            let g2 = g1.add_edge(a, b).expect("pair is non-adjacent");
            if g2.max_degree() <= d && find_clique_of_size(&g2, d + 1, limits)?.is_none() {
                return Ok(Some((g2, (a, b))));
            }
        }
        Ok(None)
    };
    let has_adjacent_pair = targets
        .iter()
        .enumerate()
        .any(|(i, &a)| targets[i + 1..].iter().any(|&b| g1.has_edge(a, b)));

    let mut some_avoided = false;
    for &a in &targets {
        if exists_mis_avoiding(&g1, a, limits)?.is_none() {
            continue;
        }
        some_avoided = true;
        let mut pairs = targets
            .iter()
            .copied()
            .filter(|&b| b != a && !g1.has_edge(a, b))
            .map(|b| (a, b));
        if let Some((g2, edge)) = try_edges(&mut pairs)? {
            return Ok(ReducedInstance {
                g2,
                added_edge: Some(edge),
                case: CliqueCase::Case1,
                relabel,
                alpha_shift: 1,
            });
        }
    }
    if some_avoided {
        let case = if has_adjacent_pair {
            CliqueCase::ForcedNonmono
        } else {
            CliqueCase::ForcedNonmonoUnverified
        };
        return Ok(plain(case, 1));
    }

    let g1_ref = &g1;
    let mut pairs = targets.iter().enumerate().flat_map(|(i, &a)| {
        targets[i + 1..]
            .iter()
            .copied()
            .filter(move |&b| !g1_ref.has_edge(a, b))
            .map(move |b| (a, b))
    });
    match try_edges(&mut pairs)? {
        Some((g2, edge)) => Ok(ReducedInstance {
            g2,
            added_edge: Some(edge),
            case: CliqueCase::Case2,
            relabel,
            alpha_shift: 0,
        }),
        None => Ok(plain(CliqueCase::ForcedNonmonoUnverified, 0)),
    }
}

/// Lifts a coloring of `G''` to `G`, giving the clique vertices distinct
/// colors that avoid their outside neighbors' colors.
pub fn extend_coloring(
    g: &Graph,
    sub: &CatlinResult,
    w: &CliqueWitness,
    relabel: &RelabelMap,
    d: usize,
) -> Result<CatlinResult> {
    const STAGE: &str = "extend-coloring";
    let mut coloring = Coloring::new(d, vec![0; g.n()]);
    for (v, slot) in relabel.forward.iter().enumerate() {
        if let Some(j) = slot {
            coloring.set(v, sub.coloring.color(*j));
        }
    }
    let problem = MatchingProblem {
        palette: d,
        forbidden: w.outside.iter().map(|a| a.map(|a| coloring.color(a))).collect(),
    };
    let matching = perfect_color_matching(&problem).ok_or_else(|| {
        CatlinError::internal(
            STAGE,
            format!("no palette matching for forbidden colors {:?}", problem.forbidden),
            g,
        )
    })?;
    for (&v, &c) in w.clique.iter().zip(&matching.assignment) {
        coloring.set(v, c);
    }
    for c in 1..=d {
        let grown = coloring.class_size(c);
        let before = sub.coloring.class_size(c);
        if grown != before + 1 {
            return Err(CatlinError::internal(
                STAGE,
                format!("class {c} went from {before} to {grown} vertices"),
                g,
            ));
        }
    }
    Ok(CatlinResult {
        coloring,
        big_class: sub.big_class,
        big_class_size: sub.big_class_size + 1,
        trace: sub.trace.clone(),
    })
}
