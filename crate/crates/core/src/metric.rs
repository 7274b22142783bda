//! Shortest-path metrics, balls, and candidate radii.
//!
//! Distances are exact `u64` values. Disconnected graphs are rejected:
//! every downstream consumer assumes finite distances, and the instance
//! generators in [`crate::reductions`] take care to emit connected graphs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph, MAX_TOTAL_WEIGHT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("distance table has wrong length for n = {0}")]
    BadLength(usize),
    #[error("d({0}, {0}) must be 0")]
    NonZeroDiagonal(usize),
    #[error("d({0}, {1}) must be positive for distinct points")]
    ZeroOffDiagonal(usize, usize),
    #[error("d({0}, {1}) != d({1}, {0})")]
    Asymmetric(usize, usize),
    #[error("triangle inequality fails at ({0}, {1}, {2})")]
    TriangleViolation(usize, usize, usize),
    #[error("distance exceeds 2^62")]
    EntryTooLarge,
    #[error("metric must have at least one point")]
    Empty,
}

/// Finite metric on points `0..n`, stored as a dense row-major table.
///
/// Invariants: zero diagonal, positive off-diagonal, symmetric, triangle
/// inequality, every entry at most `2^62`. [`shortest_path_metric`]
/// guarantees them by construction; [`MetricSpace::from_distances`] checks
/// them explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    n: usize,
    d: Vec<u64>,
}

impl MetricSpace {
    /// Validates an explicit distance table (O(n^3) triangle check).
    pub fn from_distances(n: usize, d: Vec<u64>) -> Result<Self, MetricError> {
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if d.len() != n * n {
            return Err(MetricError::BadLength(n));
        }
        for u in 0..n {
            if d[u * n + u] != 0 {
                return Err(MetricError::NonZeroDiagonal(u));
            }
            for v in 0..n {
                if d[u * n + v] > MAX_TOTAL_WEIGHT {
                    return Err(MetricError::EntryTooLarge);
                }
                if u != v && d[u * n + v] == 0 {
                    return Err(MetricError::ZeroOffDiagonal(u.min(v), u.max(v)));
                }
                if d[u * n + v] != d[v * n + u] {
                    return Err(MetricError::Asymmetric(u.min(v), u.max(v)));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if d[u * n + v] > d[u * n + w] + d[w * n + v] {
                        return Err(MetricError::TriangleViolation(u, v, w));
                    }
                }
            }
        }
        Ok(MetricSpace { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u64 {
        self.d[u * self.n + v]
    }

    /// All distances from `c`, indexed by point.
    pub fn row(&self, c: usize) -> &[u64] {
        &self.d[c * self.n..(c + 1) * self.n]
    }

    pub fn eccentricity(&self, c: usize) -> u64 {
        *self.row(c).iter().max().unwrap()
    }

    /// Distance from `c` to its nearest other point; `None` when n = 1.
    /// This is the smallest radius whose ball around `c` has two points.
    pub fn nearest_other(&self, c: usize) -> Option<u64> {
        self.row(c)
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != c)
            .map(|(_, &d)| d)
            .min()
    }

    /// Points within distance `r` of `c`, ascending.
    pub fn ball(&self, c: usize, r: u64) -> Vec<usize> {
        self.row(c)
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d <= r)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn ball_size(&self, c: usize, r: u64) -> usize {
        self.row(c).iter().filter(|&&d| d <= r).count()
    }

    /// Distinct distances from `c`, ascending, truncated to `budget` when
    /// given. Always contains 0, so a ball for every returned radius is
    /// nonempty. Every optimal clustering can restrict its radii to these
    /// values, which is what makes exact search finite.
    pub fn candidate_radii(&self, c: usize, budget: Option<u64>) -> Vec<u64> {
        let mut radii: Vec<u64> = self
            .row(c)
            .iter()
            .copied()
            .filter(|&d| budget.is_none_or(|b| d <= b))
            .collect();
        radii.sort_unstable();
        radii.dedup();
        radii
    }
}

/// Computes the all-pairs shortest-path metric of a connected graph:
/// breadth-first search per source on unit graphs, a binary-heap label
/// setting pass per source otherwise.
pub fn shortest_path_metric(g: &WeightedGraph) -> Result<MetricSpace, GraphError> {
    let n = g.n();
    let mut d = vec![u64::MAX; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        if g.unit() {
            row[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in g.neighbors(v) {
                    if row[u] == u64::MAX {
                        row[u] = row[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        } else {
            let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
            row[s] = 0;
            while let Some(Reverse((dist, v))) = heap.pop() {
                if dist > row[v] {
                    continue;
                }
                for &(u, w) in g.neighbors(v) {
                    let cand = dist + w;
                    if cand < row[u] {
                        row[u] = cand;
                        heap.push(Reverse((cand, u)));
                    }
                }
            }
        }
        if row.contains(&u64::MAX) {
            return Err(GraphError::Disconnected);
        }
    }
    Ok(MetricSpace { n, d })
}
