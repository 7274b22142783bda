//! Domination on unit bipartite graphs as exact-variant clustering.
//!
//! On a connected unit graph with no isolated vertex and at least two
//! vertices, every nonempty ball around a center that reaches a second
//! point has radius at least 1, so `k` balls under budget `k` must all
//! have radius exactly 1: their centers dominate the graph. Conversely
//! any dominating set of size at most `k` extends to one of size
//! exactly `k` because extra vertices keep domination. The instance
//! asks for exactly `k` centers, pairwise distinct, each covering a
//! second point, with radius sum at most `k`.

use crate::graph::WeightedGraph;
use crate::solver::Variant;

use super::{
    MsrProblem, ReductionArtifact, ReductionError, ReductionId, ReductionMeta, Role,
};

pub fn reduce_ds_to_exact(
    graph: &WeightedGraph,
    k: usize,
) -> Result<ReductionArtifact, ReductionError> {
    if !graph.unit() {
        return Err(ReductionError::SourceNotUnit);
    }
    if crate::graph::is_bipartite(graph).is_none() {
        return Err(ReductionError::NotBipartite);
    }
    if let Some(v) = (0..graph.n()).find(|&v| graph.degree(v) == 0) {
        return Err(ReductionError::IsolatedVertex { vertex: v });
    }
    if k > graph.n() {
        return Err(ReductionError::BudgetTooLarge { k, n: graph.n() });
    }
    let roles = (0..graph.n())
        .map(|v| Role::Original {
            vertex: v,
            class: None,
        })
        .collect();
    let problem = MsrProblem {
        graph: graph.clone(),
        k,
        delta: Some(k as u64),
        variant: Variant::ExactNonZero,
    };
    let meta = ReductionMeta {
        id: ReductionId::DsExact,
        k_source: k,
        n_per_class: None,
        budget: k as u64,
        omega_plus: Vec::new(),
        omega_minus: Vec::new(),
    };
    ReductionArtifact::build(problem, roles, meta)
}
