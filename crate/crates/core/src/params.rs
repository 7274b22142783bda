//! Exact structural graph parameters at desk scale.
//!
//! Everything here treats the graph as its unweighted skeleton: weights
//! never change which vertices are adjacent, so they are ignored. Each
//! routine is a small exact search guarded by a size cap; the caps are
//! generous enough for the instance sizes the generators in
//! [`crate::reductions`] produce for structural checks, and the `_capped`
//! variants let callers raise them deliberately.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::metric::MetricSpace;

pub const MAX_LONGEST_PATH_N: usize = 16;
pub const MAX_TREEDEPTH_N: usize = 12;
pub const MAX_TREEWIDTH_N: usize = 11;
pub const MAX_VERTEX_COVER_N: usize = 32;
pub const MAX_FVS_N: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("{what} is exact-search only: n = {n} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("treedepth is defined here for connected graphs only")]
    Disconnected,
}

fn adjacency_masks(g: &WeightedGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for &(u, v, _) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Number of vertices on a longest simple path (a single vertex counts 1).
pub fn longest_path_order(g: &WeightedGraph) -> Result<usize, ParamError> {
    longest_path_order_capped(g, MAX_LONGEST_PATH_N)
}

pub fn longest_path_order_capped(g: &WeightedGraph, cap: usize) -> Result<usize, ParamError> {
    let n = g.n();
    if n > cap || n > 63 {
        return Err(ParamError::SizeCap {
            what: "longest path",
            n,
            cap,
        });
    }
    let adj = adjacency_masks(g);
    // ends[mask] = set of vertices some simple path on exactly `mask` can end at.
    let mut ends = vec![0u64; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1u64..(1 << n) {
        let reach = ends[mask as usize];
        if reach == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        let mut vs = reach;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let mut nexts = adj[v] & !mask;
            while nexts != 0 {
                let u = nexts.trailing_zeros() as usize;
                nexts &= nexts - 1;
                ends[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    Ok(best)
}

/// Treedepth of a connected graph: 1 for a single vertex, otherwise
/// `1 + min over v of treedepth(G - v)`, taking the max over components
/// when deletion disconnects. Memoized over vertex subsets.
pub fn treedepth_exact(g: &WeightedGraph) -> Result<usize, ParamError> {
    treedepth_exact_capped(g, MAX_TREEDEPTH_N)
}

pub fn treedepth_exact_capped(g: &WeightedGraph, cap: usize) -> Result<usize, ParamError> {
    let n = g.n();
    if n > cap || n > 63 {
        return Err(ParamError::SizeCap {
            what: "treedepth",
            n,
            cap,
        });
    }
    if !g.is_connected() {
        return Err(ParamError::Disconnected);
    }
    let adj = adjacency_masks(g);
    let mut memo: HashMap<u64, usize> = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    Ok(td_rec(full, &adj, &mut memo))
}

fn split_components(mask: u64, adj: &[u64]) -> Vec<u64> {
    let mut comps = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        loop {
            let mut grown = comp;
            let mut vs = comp;
            while vs != 0 {
                let v = vs.trailing_zeros() as usize;
                vs &= vs - 1;
                grown |= adj[v] & mask;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        comps.push(comp);
        rest &= !comp;
    }
    comps
}

fn td_rec(mask: u64, adj: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if mask.count_ones() == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let comps = split_components(mask, adj);
    let value = if comps.len() > 1 {
        comps.into_iter().map(|c| td_rec(c, adj, memo)).max().unwrap()
    } else {
        let mut best = usize::MAX;
        let mut vs = mask;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            best = best.min(1 + td_rec(mask & !(1 << v), adj, memo));
        }
        best
    };
    memo.insert(mask, value);
    value
}

/// Treewidth by dynamic programming over elimination prefixes: the width of
/// the best ordering that eliminates exactly the vertices of `S` first,
/// where eliminating `v` after `S` costs the number of vertices outside
/// `S + v` reachable from `v` through `S`.
pub fn treewidth_exact(g: &WeightedGraph) -> Result<usize, ParamError> {
    treewidth_exact_capped(g, MAX_TREEWIDTH_N)
}

pub fn treewidth_exact_capped(g: &WeightedGraph, cap: usize) -> Result<usize, ParamError> {
    let n = g.n();
    if n > cap || n > 24 {
        return Err(ParamError::SizeCap {
            what: "treewidth",
            n,
            cap,
        });
    }
    let adj = adjacency_masks(g);
    let full: u64 = (1 << n) - 1;
    let mut f = vec![usize::MAX; 1 << n];
    f[0] = 0;
    for mask in 1u64..=full {
        let mut best = usize::MAX;
        let mut vs = mask;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let prev = f[(mask & !(1 << v)) as usize];
            if prev == usize::MAX {
                continue;
            }
            let q = eliminate_degree(v, mask & !(1 << v), &adj, full);
            best = best.min(prev.max(q));
        }
        f[mask as usize] = best;
    }
    Ok(f[full as usize])
}

/// Vertices outside `through + v` reachable from `v` via paths whose
/// interior lies in `through`.
fn eliminate_degree(v: usize, through: u64, adj: &[u64], full: u64) -> usize {
    let mut seen = 1u64 << v;
    let mut frontier = 1u64 << v;
    let mut hits = 0u64;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[x] & full & !seen;
        seen |= fresh;
        frontier |= fresh & through;
        hits |= fresh & !through;
    }
    (hits & !(1 << v)).count_ones() as usize
}

/// Minimum vertex cover size, by branching on a maximum-degree vertex:
/// either it joins the cover or its whole neighborhood does.
pub fn vertex_cover_number(g: &WeightedGraph) -> Result<usize, ParamError> {
    vertex_cover_number_capped(g, MAX_VERTEX_COVER_N)
}

pub fn vertex_cover_number_capped(g: &WeightedGraph, cap: usize) -> Result<usize, ParamError> {
    let n = g.n();
    if n > cap || n > 63 {
        return Err(ParamError::SizeCap {
            what: "vertex cover",
            n,
            cap,
        });
    }
    let adj = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    let mut best = n;
    vc_rec(full, 0, &adj, &mut best);
    Ok(best)
}

fn vc_rec(alive: u64, taken: usize, adj: &[u64], best: &mut usize) {
    if taken >= *best {
        return;
    }
    // Max-degree vertex in the live subgraph; stop when edge-free.
    let mut pick = None;
    let mut maxdeg = 0;
    let mut vs = alive;
    while vs != 0 {
        let v = vs.trailing_zeros() as usize;
        vs &= vs - 1;
        let deg = (adj[v] & alive).count_ones() as usize;
        if deg > maxdeg {
            maxdeg = deg;
            pick = Some(v);
        }
    }
    let Some(v) = pick else {
        *best = (*best).min(taken);
        return;
    };
    if maxdeg == 1 {
        // Leftover is a perfect matching on the remaining edges.
        let edges = {
            let mut cnt = 0;
            let mut us = alive;
            while us != 0 {
                let u = us.trailing_zeros() as usize;
                us &= us - 1;
                cnt += (adj[u] & alive).count_ones() as usize;
            }
            cnt / 2
        };
        *best = (*best).min(taken + edges);
        return;
    }
    vc_rec(alive & !(1 << v), taken + 1, adj, best);
    let closed = (adj[v] & alive) | (1 << v);
    vc_rec(alive & !closed, taken + (adj[v] & alive).count_ones() as usize, adj, best);
}

/// Minimum number of vertices whose removal leaves a forest, by searching
/// deletion sets in increasing size.
pub fn feedback_vertex_number(g: &WeightedGraph) -> Result<usize, ParamError> {
    feedback_vertex_number_capped(g, MAX_FVS_N)
}

pub fn feedback_vertex_number_capped(g: &WeightedGraph, cap: usize) -> Result<usize, ParamError> {
    let n = g.n();
    if n > cap || n > 63 {
        return Err(ParamError::SizeCap {
            what: "feedback vertex set",
            n,
            cap,
        });
    }
    for size in 0..=n {
        let mut picks: Vec<usize> = (0..size).collect();
        loop {
            let removed: u64 = picks.iter().fold(0, |acc, &p| acc | (1u64 << p));
            if is_forest_without(g, removed) {
                return Ok(size);
            }
            if !crate::util::next_combination(&mut picks, n) {
                break;
            }
        }
    }
    unreachable!("removing all vertices always leaves a forest");
}

/// True when a removal set is a feedback vertex set: the rest is acyclic.
/// Works at any graph size, unlike the exact minimum search.
pub fn is_feedback_vertex_set(g: &WeightedGraph, removed: &[usize]) -> bool {
    if g.n() > 63 {
        return is_forest_without_big(g, removed);
    }
    let mask = removed.iter().fold(0u64, |acc, &v| acc | (1 << v));
    is_forest_without(g, mask)
}

fn is_forest_without(g: &WeightedGraph, removed: u64) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v, _) in g.edges() {
        if removed & (1 << u) != 0 || removed & (1 << v) != 0 {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

fn is_forest_without_big(g: &WeightedGraph, removed: &[usize]) -> bool {
    let gone: HashSet<usize> = removed.iter().copied().collect();
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v, _) in g.edges() {
        if gone.contains(&u) || gone.contains(&v) {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// Per-point counts of pairwise-distinct balls (over all candidate radii),
/// and their maximum. For these integer metrics each candidate radius
/// yields a new ball, so the count equals the candidate-radius count; the
/// implementation still compares the sets themselves.
pub fn neighborhood_profile(m: &MetricSpace) -> (Vec<usize>, usize) {
    let counts: Vec<usize> = (0..m.n())
        .map(|v| {
            let mut distinct: HashSet<Vec<usize>> = HashSet::new();
            for r in m.candidate_radii(v, None) {
                distinct.insert(m.ball(v, r));
            }
            distinct.len()
        })
        .collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    (counts, max)
}

/// All structural parameters of one graph, computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralProfile {
    pub treedepth: usize,
    pub treewidth: usize,
    pub vertex_cover: usize,
    pub feedback_vertex: usize,
    pub longest_path: usize,
    pub neighborhood_counts: Vec<usize>,
    pub neighborhood_max: usize,
}

pub fn structural_profile(
    g: &WeightedGraph,
    m: &MetricSpace,
) -> Result<StructuralProfile, ParamError> {
    let (neighborhood_counts, neighborhood_max) = neighborhood_profile(m);
    Ok(StructuralProfile {
        treedepth: treedepth_exact(g)?,
        treewidth: treewidth_exact(g)?,
        vertex_cover: vertex_cover_number(g)?,
        feedback_vertex: feedback_vertex_number(g)?,
        longest_path: longest_path_order(g)?,
        neighborhood_counts,
        neighborhood_max,
    })
}
