//! Python bindings over the core crate. Functions take and return the
//! same text formats as the command-line tool, so results move between
//! the two without conversion.

use std::collections::HashMap;
use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use msr_core::harness::{fuzz_equivalence, fuzz_exhaustive, FuzzConfig};
use msr_core::io;
use msr_core::metric::shortest_path_metric;
use msr_core::params::structural_profile;
use msr_core::reductions::{
    augment_complete, augment_complete_bipartite, reduce_ds_to_exact, reduce_mcc_allowed_fvs,
    reduce_mcc_allowed_kdelta, reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite,
    MsrProblem, ReductionId,
};
use msr_core::solver::{
    solve_auto, solve_branch_bound, solve_cover_dp, solve_enumerate, verify_clustering,
    SolveLimits, Variant, Verdict,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn limits(timeout_ms: Option<u64>) -> SolveLimits {
    match timeout_ms {
        Some(ms) => SolveLimits::with_timeout(Duration::from_millis(ms)),
        None => SolveLimits::default(),
    }
}

fn summary(p: &MsrProblem) -> String {
    let delta = match p.delta {
        Some(d) => d.to_string(),
        None => "none".into(),
    };
    let variant = match &p.variant {
        Variant::Standard => String::new(),
        v => format!(", variant={}", v.name()),
    };
    format!("{} points, k={}, delta={}{}", p.graph.n(), p.k, delta, variant)
}

/// Solve an instance given as JSON text. Returns
/// `(cost, [(center, radius), ...], algorithm)`.
#[pyfunction]
#[pyo3(signature = (instance, algo = "auto", timeout_ms = None))]
fn solve(
    instance: &str,
    algo: &str,
    timeout_ms: Option<u64>,
) -> PyResult<(u64, Vec<(usize, u64)>, String)> {
    let problem = io::read_instance_json(instance).map_err(value_err)?;
    let inst = problem.instance().map_err(value_err)?;
    let lim = limits(timeout_ms);
    let report = match algo {
        "auto" => solve_auto(&inst, &lim),
        "dp" => solve_cover_dp(&inst, &lim),
        "bb" => solve_branch_bound(&inst, &lim),
        "enum" => solve_enumerate(&inst, &lim),
        other => return Err(value_err(format!("unknown algorithm {other:?}"))),
    }
    .map_err(value_err)?;
    Ok((
        report.optimal_cost,
        report.clustering.pairs().to_vec(),
        report.algorithm.name().to_string(),
    ))
}

/// Build an instance from a source problem given as text. Returns
/// `(instance_json, roles_text_or_None, summary)`.
#[pyfunction]
fn reduce(source: &str, reduction: &str) -> PyResult<(String, Option<String>, String)> {
    let id = ReductionId::from_cli_name(reduction)
        .ok_or_else(|| value_err(format!("unknown reduction {reduction:?}")))?;
    let (problem, roles) = match id {
        ReductionId::MccWeightedBipartite
        | ReductionId::MccVertexCover
        | ReductionId::MccAllowedKDelta
        | ReductionId::MccAllowedFvs => {
            let mcc = io::read_mcc_text(source).map_err(value_err)?;
            let art = match id {
                ReductionId::MccWeightedBipartite => reduce_mcc_weighted_bipartite(&mcc),
                ReductionId::MccVertexCover => reduce_mcc_vertex_cover(&mcc),
                ReductionId::MccAllowedKDelta => reduce_mcc_allowed_kdelta(&mcc),
                _ => reduce_mcc_allowed_fvs(&mcc),
            }
            .map_err(value_err)?;
            (art.problem.clone(), Some(io::write_roles_text(&art.roles)))
        }
        ReductionId::DsExact => {
            let (g, k) = io::read_ds_text(source).map_err(value_err)?;
            let art = reduce_ds_to_exact(&g, k).map_err(value_err)?;
            (art.problem.clone(), Some(io::write_roles_text(&art.roles)))
        }
        ReductionId::AugmentComplete | ReductionId::AugmentCompleteBipartite => {
            let base = io::read_instance_json(source).map_err(value_err)?;
            let augmented = match id {
                ReductionId::AugmentComplete => augment_complete(&base),
                _ => augment_complete_bipartite(&base),
            }
            .map_err(value_err)?;
            (augmented, None)
        }
    };
    let note = summary(&problem);
    Ok((io::write_instance_json(&problem), roles, note))
}

/// Check a clustering (JSON text) against an instance (JSON text).
/// Returns `(valid, detail)`.
#[pyfunction]
fn verify(instance: &str, clustering: &str) -> PyResult<(bool, String)> {
    let problem = io::read_instance_json(instance).map_err(value_err)?;
    let inst = problem.instance().map_err(value_err)?;
    let clustering = io::read_clustering_json(clustering).map_err(value_err)?;
    Ok(match verify_clustering(&inst, &clustering) {
        Verdict::Valid { cost } => (true, format!("valid cost {cost}")),
        Verdict::Invalid(reason) => (false, format!("invalid: {reason}")),
    })
}

/// Structural parameters of a graph given as text, as a dict with keys
/// td, tw, vc, fvs, ell, nbhd.
#[pyfunction]
fn stats(graph: &str) -> PyResult<HashMap<&'static str, usize>> {
    let g = io::read_graph_text(graph).map_err(value_err)?;
    let metric = shortest_path_metric(&g).map_err(value_err)?;
    let profile = structural_profile(&g, &metric).map_err(value_err)?;
    Ok(HashMap::from([
        ("td", profile.treedepth),
        ("tw", profile.treewidth),
        ("vc", profile.vertex_cover),
        ("fvs", profile.feedback_vertex),
        ("ell", profile.longest_path),
        ("nbhd", profile.neighborhood_max),
    ]))
}

/// Differentially test one reduction against brute force. Returns
/// `(clean, report_text)`.
#[pyfunction]
#[pyo3(signature = (reduction, trials = 200, seed = 1, exhaustive = None, timeout_ms = None))]
fn fuzz(
    reduction: &str,
    trials: u64,
    seed: u64,
    exhaustive: Option<usize>,
    timeout_ms: Option<u64>,
) -> PyResult<(bool, String)> {
    let id = ReductionId::from_cli_name(reduction)
        .ok_or_else(|| value_err(format!("unknown reduction {reduction:?}")))?;
    let timeout = timeout_ms.map(Duration::from_millis);
    let report = match exhaustive {
        Some(bound) => fuzz_exhaustive(id, bound, timeout),
        None => fuzz_equivalence(
            id,
            &FuzzConfig {
                trials,
                seed,
                timeout,
                ..FuzzConfig::default()
            },
        ),
    }
    .map_err(value_err)?;
    Ok((report.is_clean(), report.to_string()))
}

#[pymodule]
fn msrpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz, m)?)?;
    Ok(())
}
