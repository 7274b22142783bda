//! Exact min-sum-radii clustering on graph metrics.
//!
//! A clustering here is a set of center–radius pairs `(c, r)`; it covers a
//! metric space when every point lies within distance `r` of some center,
//! and its cost is the sum of the radii. The crate provides:
//!
//! * [`graph`] / [`metric`]: validated weighted graphs and their bit-exact
//!   shortest-path metrics, balls, and candidate radii.
//! * [`solver`]: three independent exact solvers (subset-cover dynamic
//!   program, branch and bound, center-set enumeration) over three problem
//!   variants, plus a clustering verifier with machine-readable verdicts.
//! * [`reductions`]: budget-carrying instance generators that translate
//!   multicolored-clique and dominating-set inputs into clustering
//!   instances with known decision thresholds, plus witness extractors
//!   that map optimal clusterings back to source solutions.
//! * [`params`]: exact structural parameters (treedepth, treewidth, vertex
//!   cover, feedback vertex number, longest path order, neighborhood
//!   profile) at desk scale.
//! * [`harness`]: seeded generators, brute-force references, and a
//!   differential fuzzer that checks generator outputs against the
//!   brute-force answers on their sources.
//! * [`io`]: stable text and JSON formats for graphs, instances,
//!   clusterings, and role maps.
//!
//! ```
//! use msr_core::graph::build_graph;
//! use msr_core::metric::shortest_path_metric;
//! use msr_core::solver::{solve_cover_dp, MsrInstance, SolveLimits, Variant};
//!
//! let g = build_graph(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
//! let m = shortest_path_metric(&g).unwrap();
//! let inst = MsrInstance::new(m, 1, None, Variant::Standard).unwrap();
//! let report = solve_cover_dp(&inst, &SolveLimits::default()).unwrap();
//! assert_eq!(report.optimal_cost, 1);
//! ```

pub mod graph;
pub mod harness;
pub mod io;
pub mod metric;
pub mod params;
pub mod reductions;
pub mod solver;
mod util;
