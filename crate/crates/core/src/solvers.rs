//! Exact exponential-time solvers: maximum independent sets, cliques,
//! chromatic number and the palette matching used to extend colorings.
//!
//! The set-based searches run on `u128` bitmasks, so no solver accepts more
//! than [`MAX_SUPPORTED_N`] vertices regardless of the configured limits.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub const MAX_SUPPORTED_N: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{solver}: graph has {n} vertices, limit is {limit}")]
pub struct CapacityError {
    pub solver: &'static str,
    pub n: usize,
    pub limit: usize,
}

/// Vertex-count limits for the exponential solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum independent set and clique search.
    pub mis: usize,
    /// Enumeration of every maximum independent set.
    pub enumerate: usize,
    /// Brute-force chromatic number.
    pub chromatic: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mis: 64,
            enumerate: 24,
            chromatic: 12,
        }
    }
}

impl Limits {
    fn check(limit: usize, solver: &'static str, n: usize) -> Result<(), CapacityError> {
        let limit = limit.min(MAX_SUPPORTED_N);
        if n > limit {
            Err(CapacityError { solver, n, limit })
        } else {
            Ok(())
        }
    }
}

type Mask = u128;

fn bit(v: usize) -> Mask {
    1 << v
}

fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn to_set(m: Mask, n: usize) -> VertexSet {
    VertexSet::from_sorted(members(m).collect(), n)
}

fn neighbor_masks(g: &Graph) -> Vec<Mask> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
        .collect()
}

/// Greedy clique cover of `p`; the number of cliques bounds α of the
/// subgraph induced by `p` from above.
fn clique_cover_bound(nbr: &[Mask], mut p: Mask) -> usize {
    let mut count = 0;
    while p != 0 {
        let v = p.trailing_zeros() as usize;
        let mut cand = p & nbr[v];
        p &= !bit(v);
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            p &= !bit(w);
            cand &= nbr[w];
        }
        count += 1;
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    pub alpha: usize,
    pub witness: VertexSet,
}

struct MisSearch<'a> {
    nbr: &'a [Mask],
    best: Mask,
    best_size: usize,
}

impl MisSearch<'_> {
    fn run(&mut self, mut p: Mask, mut chosen: Mask) {
        // Vertices of degree <= 1 inside `p` always belong to some maximum set.
        loop {
            let low = members(p).find(|&v| (self.nbr[v] & p).count_ones() <= 1);
            match low {
                Some(v) => {
                    chosen |= bit(v);
                    p &= !(bit(v) | self.nbr[v]);
                }
                None => break,
            }
        }
        let size = chosen.count_ones() as usize;
        if p == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        if size + clique_cover_bound(self.nbr, p) <= self.best_size {
            return;
        }
        let pivot = members(p)
            .max_by_key(|&v| ((self.nbr[v] & p).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty");
        self.run(p & !(bit(pivot) | self.nbr[pivot]), chosen | bit(pivot));
        self.run(p & !bit(pivot), chosen);
    }
}

/// Exact α(G) with a witness, by branch and bound on a maximum-degree vertex.
pub fn alpha_and_witness(g: &Graph, limits: &Limits) -> Result<MisResult, CapacityError> {
    Limits::check(limits.mis, "maximum independent set", g.n())?;
    let nbr = neighbor_masks(g);
    let all = if g.n() == 0 { 0 } else { Mask::MAX >> (128 - g.n()) };
    let mut search = MisSearch {
        nbr: &nbr,
        best: 0,
        best_size: 0,
    };
    search.run(all, 0);
    Ok(MisResult {
        alpha: search.best_size,
        witness: to_set(search.best, g.n()),
    })
}

/// A maximum independent set of `g` that avoids `v`, if one exists.
pub fn exists_mis_avoiding(g: &Graph, v: usize, limits: &Limits) -> Result<Option<VertexSet>, CapacityError> {
    let full = alpha_and_witness(g, limits)?;
    if !full.witness.contains(v) {
        return Ok(Some(full.witness));
    }
    let (rest, map) = g.induced_delete(&VertexSet::from_sorted(vec![v], g.n()));
    let sub = alpha_and_witness(&rest, limits)?;
    Ok((sub.alpha == full.alpha).then(|| map.lift(&sub.witness)))
}

/// Every maximum independent set of `g`, in ascending lexicographic order.
pub fn all_maximum_independent_sets(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>, CapacityError> {
    Limits::check(limits.enumerate, "maximum independent set enumeration", g.n())?;
    let nbr = neighbor_masks(g);
    let alpha = alpha_and_witness(g, limits)?.alpha;
    let mut found = Vec::new();
    // Include/exclude on the lowest vertex partitions the search space, so
    // every optimum is reached exactly once.
    fn collect(nbr: &[Mask], alpha: usize, p: Mask, chosen: Mask, out: &mut Vec<Mask>) {
        let size = chosen.count_ones() as usize;
        if p == 0 {
            if size == alpha {
                out.push(chosen);
            }
            return;
        }
        if size + clique_cover_bound(nbr, p) < alpha {
            return;
        }
        let v = p.trailing_zeros() as usize;
        collect(nbr, alpha, p & !(bit(v) | nbr[v]), chosen | bit(v), out);
        collect(nbr, alpha, p & !bit(v), chosen, out);
    }
    let all = if g.n() == 0 { 0 } else { Mask::MAX >> (128 - g.n()) };
    collect(&nbr, alpha, all, 0, &mut found);
    let mut sets: Vec<VertexSet> = found.into_iter().map(|m| to_set(m, g.n())).collect();
    sets.sort();
    Ok(sets)
}

/// The lexicographically least `r`-clique, searching only vertices of
/// degree at least `r - 1`.
pub fn find_clique_of_size(g: &Graph, r: usize, limits: &Limits) -> Result<Option<VertexSet>, CapacityError> {
    Limits::check(limits.mis, "clique search", g.n())?;
    if r == 0 {
        return Ok(Some(VertexSet::empty(g.n())));
    }
    let nbr = neighbor_masks(g);
    let eligible = (0..g.n()).filter(|&v| g.degree(v) + 1 >= r).fold(0, |m, v| m | bit(v));

    fn extend(nbr: &[Mask], r: usize, cand: Mask, clique: &mut Vec<usize>) -> bool {
        if clique.len() == r {
            return true;
        }
        if (cand.count_ones() as usize) < r - clique.len() {
            return false;
        }
        for v in members(cand) {
            clique.push(v);
            // only larger ids, so each clique is built in ascending order
            let higher = cand & nbr[v] & Mask::MAX.checked_shl(v as u32 + 1).unwrap_or(0);
            if extend(nbr, r, higher, clique) {
                return true;
            }
            clique.pop();
        }
        false
    }

    let mut clique = Vec::with_capacity(r);
    Ok(extend(&nbr, r, eligible, &mut clique).then(|| VertexSet::from_sorted(clique, g.n())))
}

/// Left side of a palette matching: vertex `i` may take any color in
/// `1..=palette` except `forbidden[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingProblem {
    pub palette: usize,
    pub forbidden: Vec<Option<usize>>,
}

/// `assignment[i]` is the color matched to left vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    pub assignment: Vec<usize>,
}

/// Perfect matching between the left vertices and the palette, by
/// augmenting paths. Each left vertex first takes the smallest free allowed
/// color and only augments when none is free.
pub fn perfect_color_matching(p: &MatchingProblem) -> Option<PerfectMatching> {
    let d = p.palette;
    if p.forbidden.len() > d {
        return None;
    }
    let allowed = |i: usize, c: usize| p.forbidden[i] != Some(c);
    // owner[c] = left vertex currently holding color c (1-based colors)
    let mut owner: Vec<Option<usize>> = vec![None; d + 1];
    let mut assignment = vec![0; p.forbidden.len()];

    fn augment(
        i: usize,
        d: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        owner: &mut [Option<usize>],
        assignment: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for c in 1..=d {
            if !allowed(i, c) || visited[c] {
                continue;
            }
            visited[c] = true;
            let free = match owner[c] {
                None => true,
                Some(j) => augment(j, d, allowed, owner, assignment, visited),
            };
            if free {
                owner[c] = Some(i);
                assignment[i] = c;
                return true;
            }
        }
        false
    }

    for i in 0..p.forbidden.len() {
        if let Some(c) = (1..=d).find(|&c| allowed(i, c) && owner[c].is_none()) {
            owner[c] = Some(i);
            assignment[i] = c;
            continue;
        }
        let mut visited = vec![false; d + 1];
        if !augment(i, d, &allowed, &mut owner, &mut assignment, &mut visited) {
            return None;
        }
    }
    Some(PerfectMatching { assignment })
}

/// Exact chromatic number, trying `k = 1, 2, ...` with backtracking.
pub fn brute_chromatic(g: &Graph, limits: &Limits) -> Result<usize, CapacityError> {
    Limits::check(limits.chromatic, "chromatic number", g.n())?;
    if g.n() == 0 {
        return Ok(0);
    }
    Ok((1..=g.n())
        .find(|&k| k_colorable(g, k))
        .expect("n colors always suffice"))
}

fn k_colorable(g: &Graph, k: usize) -> bool {
    fn place(g: &Graph, k: usize, v: usize, used: usize, colors: &mut [usize]) -> bool {
        if v == g.n() {
            return true;
        }
        // symmetry: a new color is only ever the next unused one
        for c in 1..=k.min(used + 1) {
            if g.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                colors[v] = c;
                if place(g, k, v + 1, used.max(c), colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0; g.n()];
    place(g, k, 0, 0, &mut colors)
}

/// Maximum independent set minimizing the number of odd cycles left in
/// `G \ I`, ties broken by the lexicographically least set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleMinimizer {
    pub mis: MisResult,
    pub odd_cycle_count: usize,
}

pub fn min_odd_cycle_mis(g: &Graph, limits: &Limits) -> Result<OddCycleMinimizer, CapacityError> {
    let sets = all_maximum_independent_sets(g, limits)?;
    let mut best: Option<(usize, VertexSet)> = None;
    for set in sets {
        let (rest, _) = g.induced_delete(&set);
        let count = odd_cycle_count_of(&rest);
        // sets arrive in lexicographic order, so strict improvement keeps the least
        if best.as_ref().is_none_or(|(c, _)| count < *c) {
            best = Some((count, set));
        }
    }
    let (odd_cycle_count, witness) = best.expect("every graph has a maximum independent set");
    Ok(OddCycleMinimizer {
        mis: MisResult {
            alpha: witness.len(),
            witness,
        },
        odd_cycle_count,
    })
}

// Remainders with a vertex of degree above 2 rank after every valid candidate.
fn odd_cycle_count_of(g: &Graph) -> usize {
    match g.path_cycle_decomposition() {
        Ok(d) => d.odd_cycle_count,
        Err(_) => usize::MAX,
    }
}
