//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) already present")]
    EdgePresent(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected at most {bound}")]
    DegreeTooHigh { vertex: usize, degree: usize, bound: usize },
}

/// A simple undirected graph with sorted adjacency lists.
///
/// Adjacency is always symmetric, loop-free and free of duplicates; every
/// constructor goes through [`Graph::new`] or preserves those properties.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, Self::Error> {
        Graph::new(r.n, &r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// First vertex whose degree exceeds `bound`, if any.
    pub fn vertex_above_degree(&self, bound: usize) -> Option<usize> {
        (0..self.n()).find(|&v| self.degree(v) > bound)
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in set.iter() {
            inside[v] = true;
        }
        set.iter().all(|&v| self.adj[v].iter().all(|&w| !inside[w]))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Induced subgraph on the complement of `removed`, relabeled densely in
    /// ascending order.
    pub fn induced_delete(&self, removed: &VertexSet) -> (Graph, RelabelMap) {
        let mut keep = vec![true; self.n()];
        for &v in removed.iter() {
            keep[v] = false;
        }
        let relabel = RelabelMap::from_kept(&keep);
        let adj = relabel
            .inverse
            .iter()
            .map(|&old| self.adj[old].iter().filter_map(|&w| relabel.forward[w]).collect())
            .collect();
        (Graph { adj }, relabel)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u.min(v), u.max(v)));
        }
        let mut adj = self.adj.clone();
        for (a, b) in [(u, v), (v, u)] {
            let pos = adj[a].binary_search(&b).unwrap_err();
            adj[a].insert(pos, b);
        }
        Ok(Graph { adj })
    }

    /// Splits a graph of maximum degree at most 2 into its paths, cycles and
    /// isolated vertices. Components are listed by smallest vertex.
    pub fn path_cycle_decomposition(&self) -> Result<Decomposition, GraphError> {
        if let Some(v) = self.vertex_above_degree(2) {
            return Err(GraphError::DegreeTooHigh {
                vertex: v,
                degree: self.degree(v),
                bound: 2,
            });
        }
        let n = self.n();
        let mut seen = vec![false; n];
        let mut paths = Vec::new();
        let mut cycles = Vec::new();
        let mut isolated = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let component = self.component_of(root);
            for &v in &component {
                seen[v] = true;
            }
            if component.len() == 1 {
                isolated.push(root);
                continue;
            }
            // A component with no vertex of degree below 2 is a cycle.
            match component.iter().copied().find(|&v| self.degree(v) < 2) {
                None => cycles.push(self.walk(root, self.adj[root][0])),
                Some(end) => paths.push(self.walk(end, self.adj[end][0])),
            }
        }
        let odd_cycle_count = cycles.iter().filter(|c| c.len() % 2 == 1).count();
        Ok(Decomposition {
            paths,
            cycles,
            isolated: VertexSet::from_sorted(isolated, n),
            odd_cycle_count,
        })
    }

    /// Ascending vertex list of the connected component containing `root`.
    pub fn component_of(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![root];
        seen[root] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    // Follows a degree-<=2 component from `start` through `next` until it
    // either closes up or dead-ends.
    fn walk(&self, start: usize, next: usize) -> Vec<usize> {
        let mut seq = vec![start];
        let (mut prev, mut cur) = (start, next);
        while cur != start {
            seq.push(cur);
            match self.adj[cur].iter().copied().find(|&w| w != prev) {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        seq
    }

    /// Breadth-first 2-coloring with colors 1 and 2, roots colored 1.
    pub fn two_color_bipartite(&self) -> Bipartition {
        let n = self.n();
        let mut side = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root] != 0 {
                continue;
            }
            side[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == 0 {
                        side[w] = 3 - side[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Bipartition::OddCycle(odd_cycle_from_tree(&parent, &depth, u, w));
                    }
                }
            }
        }
        Bipartition::TwoColoring(Coloring::new(2, side))
    }
}

// Joins the tree paths of the same-side endpoints `u`, `w` at their lowest
// common ancestor; the result is an odd cycle.
fn odd_cycle_from_tree(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            left.push(a);
            a = parent[a];
        } else {
            right.push(b);
            b = parent[b];
        }
    }
    left.push(a);
    left.extend(right.into_iter().rev());
    left
}

/// Result of [`Graph::two_color_bipartite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    TwoColoring(Coloring),
    /// A cycle of odd length, consecutive vertices (and last-to-first) adjacent.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn coloring(self) -> Option<Coloring> {
        match self {
            Bipartition::TwoColoring(c) => Some(c),
            Bipartition::OddCycle(_) => None,
        }
    }
}

/// A set of vertex ids in ascending order, tagged with the size of its universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>, universe: usize) -> Result<Self, GraphError> {
        if let Some(&v) = members.iter().find(|&&v| v >= universe) {
            return Err(GraphError::OutOfRange { vertex: v, n: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { members, universe })
    }

    pub(crate) fn from_sorted(members: Vec<usize>, universe: usize) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.last().is_none_or(|&v| v < universe));
        VertexSet { members, universe }
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet {
            members: Vec::new(),
            universe,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn indicator(&self) -> Vec<bool> {
        let mut out = vec![false; self.universe];
        for &v in &self.members {
            out[v] = true;
        }
        out
    }

    pub fn symmetric_difference(&self, other: &[usize]) -> VertexSet {
        let mut flags = self.indicator();
        for &v in other {
            flags[v] = !flags[v];
        }
        let members = (0..self.universe).filter(|&v| flags[v]).collect();
        VertexSet::from_sorted(members, self.universe)
    }
}

/// Dense relabeling between a graph and one of its induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelMap {
    /// Old id to new id; `None` for deleted vertices.
    pub forward: Vec<Option<usize>>,
    /// New id to old id.
    pub inverse: Vec<usize>,
}

impl RelabelMap {
    fn from_kept(keep: &[bool]) -> Self {
        let mut forward = vec![None; keep.len()];
        let mut inverse = Vec::new();
        for (old, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            forward[old] = Some(inverse.len());
            inverse.push(old);
        }
        RelabelMap { forward, inverse }
    }

    pub fn identity(n: usize) -> Self {
        RelabelMap {
            forward: (0..n).map(Some).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// Maps a set in the subgraph's id space back to the original graph.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        let members = set.iter().map(|&v| self.inverse[v]).collect();
        VertexSet::from_sorted(members, self.forward.len())
    }
}

/// Path/cycle structure of a graph with maximum degree at most 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Paths with at least two vertices, starting at their smaller endpoint.
    pub paths: Vec<Vec<usize>>,
    /// Cycles starting at their smallest vertex.
    pub cycles: Vec<Vec<usize>>,
    pub isolated: VertexSet,
    pub odd_cycle_count: usize,
}

impl Decomposition {
    pub fn odd_cycles(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles.iter().filter(|c| c.len() % 2 == 1)
    }
}

/// Total assignment of colors `1..=palette` to the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    palette: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(palette: usize, colors: Vec<usize>) -> Self {
        Coloring { palette, colors }
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn class_size(&self, color: usize) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn class(&self, color: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == color).collect()
    }

    pub(crate) fn set(&mut self, v: usize, color: usize) {
        self.colors[v] = color;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn pc5() -> Graph {
        Graph::new(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap()
    }

    fn set(members: &[usize], n: usize) -> VertexSet {
        VertexSet::new(members.to_vec(), n).unwrap()
    }

    #[test]
    fn build_graph_examples() {
        assert_eq!(Graph::new(0, &[]).unwrap().n(), 0);
        let p3 = Graph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn degree_and_independence() {
        assert_eq!(Graph::complete(4).max_degree(), 3);
        assert_eq!(cycle(5).max_degree(), 2);
        assert_eq!(pc5().max_degree(), 3);
        assert_eq!(Graph::empty(0).max_degree(), 0);
        assert!(cycle(5).is_independent(&set(&[0, 2], 5)));
        assert!(!cycle(5).is_independent(&set(&[0, 1], 5)));
        assert!(pc5().is_independent(&set(&[5, 6, 7, 8, 9], 10)));
    }

    #[test]
    fn induced_delete_examples() {
        let (g, _) = Graph::complete(3).induced_delete(&set(&[0, 1, 2], 3));
        assert_eq!(g.n(), 0);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (g, map) = p3.induced_delete(&set(&[1], 3));
        assert_eq!(g, Graph::empty(2));
        assert_eq!(map.inverse, vec![0, 2]);
        assert_eq!(map.forward, vec![Some(0), None, Some(1)]);
        let (g, _) = pc5().induced_delete(&set(&[5, 6, 7, 8, 9], 10));
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn add_edge_examples() {
        assert_eq!(Graph::empty(2).add_edge(0, 1).unwrap(), Graph::complete(2));
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.add_edge(0, 2).unwrap(), Graph::complete(3));
        assert_eq!(cycle(5).add_edge(0, 1), Err(GraphError::EdgePresent(0, 1)));
        assert_eq!(cycle(5).add_edge(3, 3), Err(GraphError::Loop(3)));
        // input untouched
        assert_eq!(p3.edge_count(), 2);
    }

    #[test]
    fn decomposition_examples() {
        let d = cycle(5).path_cycle_decomposition().unwrap();
        assert_eq!(d.cycles, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(d.odd_cycle_count, 1);

        // C3 + C4 + P2 on 0..9
        let g = Graph::new(9, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3), (7, 8)]).unwrap();
        let d = g.path_cycle_decomposition().unwrap();
        assert_eq!(d.odd_cycle_count, 1);
        assert_eq!(d.cycles.len(), 2);
        assert_eq!(d.paths, vec![vec![7, 8]]);

        // PC5 minus {0,6,7,8,9}: relabeled 1..5 -> 0..4
        let (h, map) = pc5().induced_delete(&set(&[0, 6, 7, 8, 9], 10));
        let d = h.path_cycle_decomposition().unwrap();
        let lift = |seq: &Vec<usize>| seq.iter().map(|&v| map.inverse[v]).collect::<Vec<_>>();
        assert_eq!(d.paths.iter().map(lift).collect::<Vec<_>>(), vec![vec![1, 2, 3, 4]]);
        assert_eq!(map.lift(&d.isolated).as_slice(), &[5]);
        assert_eq!(d.odd_cycle_count, 0);

        assert!(matches!(
            pc5().path_cycle_decomposition(),
            Err(GraphError::DegreeTooHigh { bound: 2, .. })
        ));
    }

    #[test]
    fn two_coloring_examples() {
        let c = cycle(4).two_color_bipartite().coloring().unwrap();
        assert_eq!(c.colors(), &[1, 2, 1, 2]);

        match cycle(5).two_color_bipartite() {
            Bipartition::OddCycle(w) => {
                assert_eq!(w.len() % 2, 1);
                let g = cycle(5);
                for i in 0..w.len() {
                    assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }

        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = g.two_color_bipartite().coloring().unwrap();
        assert_eq!(c.color(4), 1);
        assert!(g.edges().all(|(u, v)| c.color(u) != c.color(v)));
    }
}
