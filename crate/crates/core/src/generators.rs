//! Seeded random graphs and a catalogue of small named graphs.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (crates
//! `rand` 0.8 / `rand_chacha` 0.3):
//!
//! * [`gnp`] walks the pairs `(u, v)`, `u < v`, in lexicographic order and
//!   keeps a pair when a fresh `rng.gen::<f64>()` (uniform in `[0, 1)`) is
//!   below `p`.
//! * [`random_triangle_free_subcubic`] makes `8 n` proposals; each draws
//!   `u = rng.gen_range(0..n)` then `v = rng.gen_range(0..n)` and keeps the
//!   edge when `u != v`, it is new, both degrees are below 3 and `u`, `v`
//!   have no common neighbor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GeneratorError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("generated edges are valid"))
}

pub fn random_triangle_free_subcubic(n: usize, seed: u64) -> Graph {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 * n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || adj[u].contains(&v) || adj[u].len() >= 3 || adj[v].len() >= 3 {
            continue;
        }
        if adj[u].iter().any(|w| adj[v].contains(w)) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().map(move |&v| (u, v)))
        .collect();
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// Names accepted by [`named`], besides the parametric `cN`, `kN`, `pN`,
/// `eN` (edgeless) and `kA,B` forms.
pub const NAMES: &[&str] = &[
    "petersen",
    "c5",
    "k4",
    "k33",
    "k44",
    "paw",
    "pc5",
    "k4-pendants",
    "prism",
    "cube",
    "wagner",
    "star5",
];

pub fn named(name: &str) -> Result<Graph, GeneratorError> {
    let unknown = || GeneratorError::UnknownName(name.to_string());
    let g = match name {
        "petersen" => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((i + 5, (i + 2) % 5 + 5));
            }
            build(10, &e)
        }
        "k33" => complete_bipartite(3, 3),
        "k44" => complete_bipartite(4, 4),
        "paw" => build(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]),
        "pc5" => {
            let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            e.extend((0..5).map(|i| (i, i + 5)));
            build(10, &e)
        }
        "k4-pendants" => {
            let mut e = Vec::new();
            for i in 0..4 {
                e.extend((i + 1..4).map(|j| (i, j)));
                e.push((i, i + 4));
            }
            build(8, &e)
        }
        // two triangles 0-1-2 and 3-4-5 joined by i <-> i+3
        "prism" => build(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        ),
        "cube" => {
            let e: Vec<_> = (0..8usize)
                .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
                .filter(|(u, v)| u < v)
                .collect();
            build(8, &e)
        }
        // C8 plus the four long diagonals
        "wagner" => {
            let mut e: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
            e.extend((0..4).map(|i| (i, i + 4)));
            build(8, &e)
        }
        "star5" => complete_bipartite(1, 5),
        _ => parametric(name).ok_or_else(unknown)?,
    };
    Ok(g)
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("named graphs are well formed")
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let e: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    build(a + b, &e)
}

fn parametric(name: &str) -> Option<Graph> {
    let (kind, rest) = name.split_at(name.char_indices().nth(1)?.0);
    if kind == "k" {
        if let Some((a, b)) = rest.split_once(',') {
            return Some(complete_bipartite(a.parse().ok()?, b.parse().ok()?));
        }
    }
    let n: usize = rest.parse().ok()?;
    match kind {
        "c" if n >= 3 => Some(build(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())),
        "k" => Some(Graph::complete(n)),
        "p" => Some(build(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())),
        "e" => Some(Graph::empty(n)),
        _ => None,
    }
}
