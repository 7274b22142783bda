//! Budget-preserving densification: filling in missing edges just above
//! the budget makes the graph complete (or complete bipartite) without
//! touching any ball a solution under the budget could use.

use crate::graph::{build_graph, is_bipartite};

use super::{MsrProblem, ReductionError, MAX_CONSTRUCTION_WEIGHT};

fn fill_weight(problem: &MsrProblem) -> Result<u64, ReductionError> {
    let delta = problem.delta.ok_or(ReductionError::MissingBudget)?;
    delta
        .checked_add(1)
        .filter(|&w| w <= MAX_CONSTRUCTION_WEIGHT)
        .ok_or(ReductionError::SizeGuard {
            what: "fill weight",
            size: delta as u128 + 1,
            cap: MAX_CONSTRUCTION_WEIGHT as u128,
        })
}

/// Adds every missing edge at weight one above the budget. Distances up
/// to the budget, and so the budgeted answer, are unchanged.
pub fn augment_complete(problem: &MsrProblem) -> Result<MsrProblem, ReductionError> {
    let w = fill_weight(problem)?;
    let g = &problem.graph;
    let mut edges = g.edges().to_vec();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                edges.push((u, v, w));
            }
        }
    }
    Ok(MsrProblem {
        graph: build_graph(g.n(), &edges)?,
        k: problem.k,
        delta: problem.delta,
        variant: problem.variant.clone(),
    })
}

/// Adds every missing edge between the two sides of a bipartition at
/// weight one above the budget. Rejects non-bipartite inputs.
pub fn augment_complete_bipartite(problem: &MsrProblem) -> Result<MsrProblem, ReductionError> {
    let w = fill_weight(problem)?;
    let g = &problem.graph;
    let side = is_bipartite(g).ok_or(ReductionError::NotBipartite)?;
    let mut edges = g.edges().to_vec();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if side[u] != side[v] && !g.has_edge(u, v) {
                edges.push((u, v, w));
            }
        }
    }
    Ok(MsrProblem {
        graph: build_graph(g.n(), &edges)?,
        k: problem.k,
        delta: problem.delta,
        variant: problem.variant.clone(),
    })
}
