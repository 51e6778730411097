//! The triangle-free subcubic base case.
//!
//! Starting from a maximum independent set `I`, the odd cycles of `G \ I`
//! are removed one at a time by exchanging `I` with the vertex set of a
//! longest alternating path that starts on an odd cycle.

use serde::{Deserialize, Serialize};

use super::{CatlinError, CatlinResult, Engine, Result, Step, StepRecord};
use crate::graph::{Coloring, Decomposition, Graph, RelabelMap, VertexSet};
use crate::solvers::{alpha_and_witness, min_odd_cycle_mis};

/// A path `x0, x1, ..., x(2m-1)` that starts outside `I` and alternates
/// between non-isolated vertices of `G \ I` (even positions) and vertices of
/// `I` (odd positions). The even-position vertices are pairwise non-adjacent.
/// Only the start may be isolated in `G \ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingPath {
    vertices: Vec<usize>,
}

impl AlternatingPath {
    /// Checks every path invariant against `(g, independent)`.
    pub fn new(vertices: Vec<usize>, g: &Graph, independent: &VertexSet) -> Result<Self> {
        let bad = |why: &str| Err(CatlinError::InvalidArgument(format!("{vertices:?}: {why}")));
        if vertices.is_empty() || !vertices.len().is_multiple_of(2) {
            return bad("length must be even and positive");
        }
        if vertices.iter().any(|&v| v >= g.n()) {
            return bad("vertex out of range");
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if std::mem::replace(&mut seen[v], true) {
                return bad("repeated vertex");
            }
        }
        if !vertices.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return bad("consecutive vertices must be adjacent");
        }
        for (k, &v) in vertices.iter().enumerate() {
            let inside = independent.contains(v);
            if k % 2 == 1 && !inside {
                return bad("odd positions must lie in I");
            }
            if k % 2 == 0 && (inside || (k > 0 && !has_neighbor_outside(g, independent, v))) {
                return bad("even positions must be non-isolated vertices of G \\ I");
            }
        }
        let evens: Vec<usize> = vertices.iter().step_by(2).copied().collect();
        if evens
            .iter()
            .enumerate()
            .any(|(i, &u)| evens[i + 1..].iter().any(|&w| g.has_edge(u, w)))
        {
            return bad("even positions must be independent");
        }
        Ok(AlternatingPath { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }
}

fn has_neighbor_outside(g: &Graph, independent: &VertexSet, v: usize) -> bool {
    g.neighbors(v).iter().any(|&w| !independent.contains(w))
}

fn check_path_preconditions(g: &Graph, independent: &VertexSet, start: usize) -> Result<()> {
    if independent.universe() != g.n() || start >= g.n() {
        return Err(CatlinError::InvalidArgument("vertex set does not match graph".into()));
    }
    if !g.is_independent(independent) {
        return Err(CatlinError::InvalidArgument(format!(
            "{:?} is not independent",
            independent.as_slice()
        )));
    }
    if let Some(v) =
        (0..g.n()).find(|&v| !independent.contains(v) && g.neighbors(v).iter().all(|&w| !independent.contains(w)))
    {
        return Err(CatlinError::InvalidArgument(format!(
            "{:?} is not maximal: vertex {v} can be added",
            independent.as_slice()
        )));
    }
    if independent.contains(start) {
        return Err(CatlinError::InvalidArgument(format!("start vertex {start} lies in I")));
    }
    Ok(())
}

// Depth-first enumeration of every alternating path from `start`, in
// lexicographic order of vertex sequences. `visit` sees each complete path
// (ending inside I) exactly once.
fn for_each_alternating_path(g: &Graph, independent: &VertexSet, start: usize, visit: &mut dyn FnMut(&[usize])) {
    struct Walk<'a> {
        g: &'a Graph,
        in_set: Vec<bool>,
        usable: Vec<bool>,
        used: Vec<bool>,
        // number of even-position path vertices adjacent to each vertex
        blocked: Vec<usize>,
        path: Vec<usize>,
    }

    impl Walk<'_> {
        fn walk_even(&mut self, x: usize, visit: &mut dyn FnMut(&[usize])) {
            for &y in self.g.neighbors(x) {
                if !self.in_set[y] || self.used[y] {
                    continue;
                }
                self.used[y] = true;
                self.path.push(y);
                visit(&self.path);
                self.walk_odd(y, visit);
                self.path.pop();
                self.used[y] = false;
            }
        }

        fn walk_odd(&mut self, y: usize, visit: &mut dyn FnMut(&[usize])) {
            for &z in self.g.neighbors(y) {
                if !self.usable[z] || self.used[z] || self.blocked[z] > 0 {
                    continue;
                }
                self.push_even(z);
                self.walk_even(z, visit);
                self.pop_even(z);
            }
        }

        fn push_even(&mut self, z: usize) {
            self.used[z] = true;
            self.path.push(z);
            for &w in self.g.neighbors(z) {
                self.blocked[w] += 1;
            }
        }

        fn pop_even(&mut self, z: usize) {
            for &w in self.g.neighbors(z) {
                self.blocked[w] -= 1;
            }
            self.path.pop();
            self.used[z] = false;
        }
    }

    let in_set = independent.indicator();
    let usable = (0..g.n())
        .map(|v| !in_set[v] && g.neighbors(v).iter().any(|&w| !in_set[w]))
        .collect();
    let mut walk = Walk {
        g,
        in_set,
        usable,
        used: vec![false; g.n()],
        blocked: vec![0; g.n()],
        path: Vec::new(),
    };
    walk.push_even(start);
    walk.walk_even(start, visit);
    walk.pop_even(start);
}

/// The longest alternating path from `start`; among equally long paths the
/// lexicographically least vertex sequence wins.
pub fn max_alternating_path(g: &Graph, independent: &VertexSet, start: usize) -> Result<AlternatingPath> {
    check_path_preconditions(g, independent, start)?;
    let mut best: Vec<usize> = Vec::new();
    for_each_alternating_path(g, independent, start, &mut |p| {
        if p.len() > best.len() {
            best = p.to_vec();
        }
    });
    if best.is_empty() {
        // unreachable for a maximal I: `start` has a neighbor in I
        return Err(CatlinError::internal(
            "alternating-path",
            format!("no alternating path from {start}"),
            g,
        ));
    }
    Ok(AlternatingPath { vertices: best })
}

/// Every alternating path from `start`, longest first, then lexicographic.
pub fn alternating_paths(g: &Graph, independent: &VertexSet, start: usize) -> Result<Vec<AlternatingPath>> {
    check_path_preconditions(g, independent, start)?;
    let mut all = Vec::new();
    for_each_alternating_path(g, independent, start, &mut |p| {
        all.push(AlternatingPath { vertices: p.to_vec() })
    });
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(all)
}

/// `I' = I Δ V(P)`, checked to be independent and of the same size as `I`.
pub fn augment(g: &Graph, independent: &VertexSet, path: &AlternatingPath) -> Result<VertexSet> {
    let next = independent.symmetric_difference(path.vertices());
    if next.len() != independent.len() {
        return Err(CatlinError::internal(
            "augment",
            format!("|I'| = {} differs from |I| = {}", next.len(), independent.len()),
            g,
        ));
    }
    if !g.is_independent(&next) {
        return Err(CatlinError::internal(
            "augment",
            format!("I' = {:?} is not independent", next.as_slice()),
            g,
        ));
    }
    Ok(next)
}

/// An accepted exchange in the base case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub path: Vec<usize>,
    pub odd_cycles_before: usize,
    pub odd_cycles_after: usize,
    /// Independent set after the exchange.
    pub result: Vec<usize>,
}

struct Remainder {
    decomposition: Decomposition,
    map: RelabelMap,
}

impl Remainder {
    fn of(g: &Graph, independent: &VertexSet) -> Result<Self> {
        let (rest, map) = g.induced_delete(independent);
        let decomposition = rest.path_cycle_decomposition().map_err(|e| {
            CatlinError::internal(
                "base-case",
                format!("G \\ I is not a union of paths and cycles: {e}"),
                g,
            )
        })?;
        Ok(Remainder { decomposition, map })
    }

    /// Odd cycles as sorted vertex lists in the ids of `G`.
    fn odd_cycle_sets(&self) -> Vec<Vec<usize>> {
        self.decomposition
            .odd_cycles()
            .map(|c| {
                let mut ids: Vec<usize> = c.iter().map(|&v| self.map.inverse[v]).collect();
                ids.sort_unstable();
                ids
            })
            .collect()
    }
}

impl Engine {
    pub(super) fn base_case(&self, g: &Graph, initial: Option<VertexSet>, depth: usize) -> Result<CatlinResult> {
        let mut independent = match initial {
            Some(set) => set,
            None => alpha_and_witness(g, &self.limits)?.witness,
        };
        let initial_set = independent.as_slice().to_vec();
        let mut remainder = Remainder::of(g, &independent)?;
        let initial_odd_cycles = remainder.decomposition.odd_cycle_count;
        let mut augmentations = Vec::new();
        let mut rejected_candidates = 0;
        let mut fallback = false;

        while remainder.decomposition.odd_cycle_count > 0 {
            let before = remainder.decomposition.odd_cycle_count;
            match improve(g, &independent, &remainder, &mut rejected_candidates)? {
                Some((path, next, next_remainder)) => {
                    augmentations.push(Augmentation {
                        path: path.vertices,
                        odd_cycles_before: before,
                        odd_cycles_after: next_remainder.decomposition.odd_cycle_count,
                        result: next.as_slice().to_vec(),
                    });
                    independent = next;
                    remainder = next_remainder;
                }
                None => {
                    let best = min_odd_cycle_mis(g, &self.limits)?;
                    if best.odd_cycle_count != 0 {
                        return Err(CatlinError::internal(
                            "base-case",
                            format!(
                                "every maximum independent set leaves {} odd cycles",
                                best.odd_cycle_count
                            ),
                            g,
                        ));
                    }
                    fallback = true;
                    independent = best.mis.witness;
                    remainder = Remainder::of(g, &independent)?;
                }
            }
        }

        let (rest, map) = g.induced_delete(&independent);
        let halves = rest
            .two_color_bipartite()
            .coloring()
            .ok_or_else(|| CatlinError::internal("base-case", "G \\ I has no odd cycle but is not bipartite", g))?;
        let colors = (0..g.n())
            .map(|v| map.forward[v].map_or(3, |j| halves.color(j)))
            .collect();
        Ok(CatlinResult {
            coloring: Coloring::new(3, colors),
            big_class: 3,
            big_class_size: independent.len(),
            trace: vec![StepRecord {
                depth,
                step: Step::Base {
                    n: g.n(),
                    initial_independent_set: initial_set,
                    initial_odd_cycles,
                    augmentations,
                    rejected_candidates,
                    fallback,
                    final_odd_cycles: remainder.decomposition.odd_cycle_count,
                },
            }],
        })
    }
}

// Tries the longest path from each vertex of the first odd cycle, then every
// other alternating path in decreasing length. A candidate is accepted when
// the exchange verifies, strictly lowers the odd-cycle count and leaves only
// odd cycles that were already present.
fn improve(
    g: &Graph,
    independent: &VertexSet,
    remainder: &Remainder,
    rejected: &mut usize,
) -> Result<Option<(AlternatingPath, VertexSet, Remainder)>> {
    let before = remainder.odd_cycle_sets();
    let cycle = before.first().expect("caller checked for an odd cycle").clone();

    let accept = |path: &AlternatingPath| -> Result<Option<(VertexSet, Remainder)>> {
        let next = match augment(g, independent, path) {
            Ok(next) => next,
            Err(CatlinError::Internal { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let after = match Remainder::of(g, &next) {
            Ok(r) => r,
            Err(CatlinError::Internal { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let shrank = after.decomposition.odd_cycle_count < remainder.decomposition.odd_cycle_count;
        let inherited = after.odd_cycle_sets().iter().all(|c| before.contains(c));
        Ok((shrank && inherited).then_some((next, after)))
    };

    for &start in &cycle {
        let path = max_alternating_path(g, independent, start)?;
        if let Some((next, after)) = accept(&path)? {
            return Ok(Some((path, next, after)));
        }
        *rejected += 1;
    }
    for &start in &cycle {
        let longest = max_alternating_path(g, independent, start)?;
        for path in alternating_paths(g, independent, start)? {
            if path == longest {
                continue;
            }
            if let Some((next, after)) = accept(&path)? {
                return Ok(Some((path, next, after)));
            }
            *rejected += 1;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn set(members: &[usize], n: usize) -> VertexSet {
        VertexSet::new(members.to_vec(), n).unwrap()
    }

    #[test]
    fn pc5_path_from_cycle() {
        let g = named("pc5").unwrap();
        let i = set(&[5, 6, 7, 8, 9], 10);
        let p = max_alternating_path(&g, &i, 0).unwrap();
        assert_eq!(p.vertices(), &[0, 5]);
        // (0, 5) is the only member ending inside I
        let all = alternating_paths(&g, &i, 0).unwrap();
        assert_eq!(all, vec![p.clone()]);
        let next = augment(&g, &i, &p).unwrap();
        assert_eq!(next.as_slice(), &[0, 6, 7, 8, 9]);
    }

    #[test]
    fn path_preconditions() {
        // C5 plus an isolated vertex with I = {5}: not maximal
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(
            max_alternating_path(&g, &set(&[5], 6), 0),
            Err(CatlinError::InvalidArgument(_))
        ));
        let c5 = named("c5").unwrap();
        assert!(max_alternating_path(&c5, &set(&[0, 1], 5), 2).is_err());
        assert!(max_alternating_path(&c5, &set(&[0, 2], 5), 2).is_err());
    }

    #[test]
    fn k2_path_and_augmentation() {
        let k2 = Graph::complete(2);
        let i = set(&[1], 2);
        let p = max_alternating_path(&k2, &i, 0).unwrap();
        assert_eq!(p.vertices(), &[0, 1]);
        assert_eq!(augment(&k2, &i, &p).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn c6_augmentations_are_verified() {
        let g = named("c6").unwrap();
        let i = set(&[0, 2, 4], 6);
        // {1, 2, 4} contains the edge 1-2
        let p = AlternatingPath { vertices: vec![1, 0] };
        assert!(matches!(
            augment(&g, &i, &p),
            Err(CatlinError::Internal { stage: "augment", .. })
        ));
        // size change is reported too
        let p = AlternatingPath { vertices: vec![1] };
        assert!(matches!(augment(&g, &i, &p), Err(CatlinError::Internal { .. })));
        // 0-1-2-3 path with I = {1} in P4 swaps cleanly
        let p4 = named("p4").unwrap();
        let p = AlternatingPath::new(vec![0, 1], &p4, &set(&[1, 3], 4)).unwrap();
        assert_eq!(augment(&p4, &set(&[1, 3], 4), &p).unwrap().as_slice(), &[0, 3]);
    }

    #[test]
    fn validated_path_constructor() {
        let g = named("pc5").unwrap();
        let i = set(&[5, 6, 7, 8, 9], 10);
        assert!(AlternatingPath::new(vec![0, 5], &g, &i).is_ok());
        assert!(AlternatingPath::new(vec![0], &g, &i).is_err());
        assert!(AlternatingPath::new(vec![5, 0], &g, &i).is_err());
        assert!(AlternatingPath::new(vec![0, 6], &g, &i).is_err());
    }

    #[test]
    fn base_case_examples() {
        let e = Engine::default();
        let c5 = named("c5").unwrap();
        let r = e.base_case_color(&c5).unwrap();
        assert_eq!(r.coloring.class(3), vec![0, 2]);
        assert_eq!(r.big_class_size, 2);

        let k33 = named("k33").unwrap();
        let r = e.base_case_color(&k33).unwrap();
        assert_eq!(r.big_class_size, 3);
        assert!(k33.edges().all(|(u, v)| r.coloring.color(u) != r.coloring.color(v)));

        let pc5 = named("pc5").unwrap();
        let r = e.base_case_color_from(&pc5, &set(&[5, 6, 7, 8, 9], 10)).unwrap();
        match &r.trace[0].step {
            Step::Base {
                augmentations,
                fallback,
                final_odd_cycles,
                ..
            } => {
                assert_eq!(augmentations.len(), 1);
                assert_eq!(augmentations[0].path, vec![0, 5]);
                assert!(!fallback);
                assert_eq!(*final_odd_cycles, 0);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(r.coloring.class(3), vec![0, 6, 7, 8, 9]);

        assert!(e.base_case_color(&named("paw").unwrap()).is_err());
        assert!(e.base_case_color_from(&pc5, &set(&[5, 6, 7, 8], 10)).is_err());
    }
}
