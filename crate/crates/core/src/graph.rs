//! Validated simple undirected graphs with positive integer edge weights.
//!
//! All distance arithmetic downstream is bit-exact in `u64`. The
//! total-weight cap enforced at construction keeps every shortest-path
//! distance, and any radius sum a solver can report, far from overflow.

use thiserror::Error;

/// Total edge weight is capped at `2^62` so distances and budgets stay
/// comfortably inside `u64` even after being summed a few times.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

/// Default cap on the vertex count [`subdivide_to_unit`] may produce.
pub const DEFAULT_SUBDIVISION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} has weight 0; weights must be positive")]
    ZeroWeight(usize, usize),
    #[error("total edge weight exceeds 2^62")]
    TotalWeightOverflow,
    #[error("graph is disconnected; finite metrics need a connected graph")]
    Disconnected,
    #[error("subdivision needs {needed} vertices, cap is {cap}")]
    SubdivisionCap { needed: usize, cap: usize },
}

/// Simple undirected graph with positive `u64` edge weights.
///
/// Invariants, all enforced by [`build_graph`]: endpoints in range, no
/// self-loops, no duplicate edges, every weight at least 1, total weight at
/// most [`MAX_TOTAL_WEIGHT`]. Edges are stored sorted with `u < v`, so two
/// equal graphs compare equal regardless of input order. `unit` is derived:
/// true iff every weight is exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    unit: bool,
    adj: Vec<Vec<(usize, u64)>>,
}

/// Validates and normalizes an edge list into a [`WeightedGraph`].
pub fn build_graph(n: usize, edges: &[(usize, usize, u64)]) -> Result<WeightedGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut norm: Vec<(usize, usize, u64)> = Vec::with_capacity(edges.len());
    let mut total: u64 = 0;
    for &(u, v, w) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w == 0 {
            return Err(GraphError::ZeroWeight(u.min(v), u.max(v)));
        }
        total = total
            .checked_add(w)
            .filter(|&t| t <= MAX_TOTAL_WEIGHT)
            .ok_or(GraphError::TotalWeightOverflow)?;
        norm.push((u.min(v), u.max(v), w));
    }
    norm.sort_unstable();
    for pair in norm.windows(2) {
        if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
            return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
        }
    }
    let unit = norm.iter().all(|&(_, _, w)| w == 1);
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in &norm {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    Ok(WeightedGraph {
        n,
        edges: norm,
        unit,
        adj,
    })
}

impl WeightedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// True iff every edge weight is exactly 1.
    pub fn unit(&self) -> bool {
        self.unit
    }

    /// Normalized edge list: sorted, each with `u < v`.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    /// Neighbors of `v` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search_by_key(&v, |&(x, _)| x).is_ok()
    }

    /// Connected components as sorted vertex lists, sorted by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(u, _) in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Two-colors the graph if possible. Returns one side assignment per vertex
/// (0/1); each component is colored from its smallest vertex, which gets
/// side 0, so the output is deterministic.
pub fn is_bipartite(g: &WeightedGraph) -> Option<Vec<u8>> {
    let mut side = vec![u8::MAX; g.n()];
    for start in 0..g.n() {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in g.neighbors(v) {
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    queue.push_back(u);
                } else if side[u] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// A vertex created by [`subdivide_to_unit`]: it lies on the source edge
/// `{a, b}` (with `a < b`) at distance `offset` from `a`, `1 <= offset < w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdividedPoint {
    pub a: usize,
    pub b: usize,
    pub offset: u64,
}

/// Replaces every edge of weight `w` by a path of `w` unit edges through
/// `w - 1` fresh vertices. Original vertices keep their indices; fresh
/// vertices are appended in normalized edge order, increasing offset.
/// Shortest-path distances between original vertices are preserved exactly.
pub fn subdivide_to_unit(
    g: &WeightedGraph,
    cap: usize,
) -> Result<(WeightedGraph, Vec<SubdividedPoint>), GraphError> {
    let extra: u64 = g.edges().iter().map(|&(_, _, w)| w - 1).sum();
    let needed = (g.n() as u64).saturating_add(extra);
    if needed > cap as u64 {
        return Err(GraphError::SubdivisionCap {
            needed: needed.min(usize::MAX as u64) as usize,
            cap,
        });
    }
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut points: Vec<SubdividedPoint> = Vec::new();
    let mut next = g.n();
    for &(a, b, w) in g.edges() {
        if w == 1 {
            edges.push((a, b, 1));
            continue;
        }
        let mut prev = a;
        for offset in 1..w {
            edges.push((prev, next, 1));
            points.push(SubdividedPoint { a, b, offset });
            prev = next;
            next += 1;
        }
        edges.push((prev, b, 1));
    }
    let out = build_graph(next, &edges)?;
    debug_assert!(out.unit());
    Ok((out, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
        build_graph(n, &edges).unwrap()
    }

    #[test]
    fn build_normalizes_and_derives_unit() {
        let g = build_graph(3, &[(2, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 1), (1, 2, 1)]);
        assert!(g.unit());
        let g = build_graph(2, &[(0, 1, 3)]).unwrap();
        assert!(!g.unit());
    }

    #[test]
    fn build_rejects_each_defect() {
        assert_eq!(build_graph(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            build_graph(2, &[(0, 2, 1)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(build_graph(2, &[(1, 1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            build_graph(2, &[(0, 1, 1), (1, 0, 2)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(build_graph(2, &[(0, 1, 0)]), Err(GraphError::ZeroWeight(0, 1)));
        assert_eq!(
            build_graph(3, &[(0, 1, 1 << 62), (1, 2, 1)]),
            Err(GraphError::TotalWeightOverflow)
        );
    }

    #[test]
    fn adjacency_queries() {
        let g = build_graph(4, &[(0, 1, 2), (0, 2, 1), (2, 3, 5)]).unwrap();
        assert_eq!(g.neighbors(0), &[(1, 2), (2, 1)]);
        assert!(g.has_edge(3, 2));
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn components_and_connectivity() {
        let g = build_graph(5, &[(0, 1, 1), (3, 4, 1)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(path(4).is_connected());
    }

    #[test]
    fn bipartite_detection() {
        assert_eq!(is_bipartite(&path(4)), Some(vec![0, 1, 0, 1]));
        let c4 = build_graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        assert_eq!(is_bipartite(&c4), Some(vec![0, 1, 0, 1]));
        let c3 = build_graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(is_bipartite(&c3), None);
    }

    #[test]
    fn subdivision_layout() {
        let g = build_graph(3, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        let (unit, pts) = subdivide_to_unit(&g, 100).unwrap();
        assert_eq!(unit.n(), 5);
        assert!(unit.unit());
        assert_eq!(
            pts,
            vec![
                SubdividedPoint { a: 0, b: 1, offset: 1 },
                SubdividedPoint { a: 0, b: 1, offset: 2 },
            ]
        );
        // Path 0-3-4-1-2 after subdivision.
        assert!(unit.has_edge(0, 3) && unit.has_edge(3, 4) && unit.has_edge(4, 1) && unit.has_edge(1, 2));
    }

    #[test]
    fn subdivision_cap() {
        let g = build_graph(2, &[(0, 1, 50)]).unwrap();
        assert_eq!(
            subdivide_to_unit(&g, 10),
            Err(GraphError::SubdivisionCap { needed: 51, cap: 10 })
        );
    }
}
