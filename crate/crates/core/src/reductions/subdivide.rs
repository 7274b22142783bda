//! Unit-distance forms of the clique constructions, with centers pinned
//! to the points that carry the construction's choices: the original
//! members for the weighted bipartite build, the anchor pairs for the
//! vertex-cover build. Every weighted edge becomes a path of unit edges,
//! original points keep their indices and pairwise distances, and the
//! ball count and budget carry over unchanged.
//!
//! Splitting an edge adds interior points that also need covering, and a
//! budget met exactly on the weighted form can fail here. The weighted
//! bipartite build is the sharp case: with a class of two or more
//! members, the forced per-class radii leave the leaf-path interiors of
//! every non-center member strictly out of reach. The anchor build tiles
//! its member paths exactly (the two anchor radii sum to one less than
//! the path length), so only its non-adjacency gadgets pay for interior
//! points. The builders do not screen for any of this; the unit instance
//! answers for itself.

use crate::graph::{subdivide_to_unit, DEFAULT_SUBDIVISION_CAP};
use crate::params::is_feedback_vertex_set;
use crate::solver::Variant;

use super::{
    reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite, MccInstance, MsrProblem,
    ReductionArtifact, ReductionError, ReductionId, ReductionMeta, Role,
};

/// Unit instances store a dense metric over every subdivision point, so
/// they are capped far below the raw subdivision limit.
pub const MAX_UNIT_POINTS: usize = 10_000;

fn points_with(base: &ReductionArtifact, want: impl Fn(&Role) -> bool) -> Vec<usize> {
    base.roles
        .iter()
        .enumerate()
        .filter(|(_, r)| want(r))
        .map(|(i, _)| i)
        .collect()
}

/// Subdivides a weighted artifact to unit edges, extending the role map
/// over the interior points and restricting centers to `allowed`.
fn subdivided(
    base: &ReductionArtifact,
    id: ReductionId,
    allowed: Vec<usize>,
) -> Result<ReductionArtifact, ReductionError> {
    let (unit, added) = subdivide_to_unit(&base.problem.graph, DEFAULT_SUBDIVISION_CAP)?;
    if unit.n() > MAX_UNIT_POINTS {
        return Err(ReductionError::SizeGuard {
            what: "unit points",
            size: unit.n() as u128,
            cap: MAX_UNIT_POINTS as u128,
        });
    }
    let mut roles = base.roles.clone();
    roles.extend(added.iter().map(|p| Role::Subdivision {
        a: p.a,
        b: p.b,
        offset: p.offset,
    }));
    let problem = MsrProblem {
        graph: unit,
        k: base.problem.k,
        delta: base.problem.delta,
        variant: Variant::AllowedCenters(allowed),
    };
    let meta = ReductionMeta {
        id,
        ..base.meta.clone()
    };
    let artifact = ReductionArtifact::build(problem, roles, meta)?;
    // Subdivision must not disturb any original pairwise distance.
    let before = base.instance.metric();
    let after = artifact.instance.metric();
    for u in 0..base.instance.n() {
        for v in u + 1..base.instance.n() {
            assert_eq!(before.dist(u, v), after.dist(u, v));
        }
    }
    Ok(artifact)
}

/// Unit-distance form of [`reduce_mcc_weighted_bipartite`] with centers
/// restricted to the original member points.
pub fn reduce_mcc_allowed_kdelta(mcc: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    let base = reduce_mcc_weighted_bipartite(mcc)?;
    let allowed = points_with(&base, |r| matches!(r, Role::Original { .. }));
    subdivided(&base, ReductionId::MccAllowedKDelta, allowed)
}

/// Unit-distance form of [`reduce_mcc_vertex_cover`] with centers
/// restricted to the anchors. The anchors remain a feedback vertex set:
/// every cycle of the weighted build passes through one, and subdividing
/// edges never creates a cycle that avoids the old vertices.
pub fn reduce_mcc_allowed_fvs(mcc: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    let base = reduce_mcc_vertex_cover(mcc)?;
    let allowed = points_with(&base, |r| matches!(r, Role::Anchor { .. }));
    let artifact = subdivided(&base, ReductionId::MccAllowedFvs, allowed.clone())?;
    assert!(is_feedback_vertex_set(&artifact.problem.graph, &allowed));
    Ok(artifact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::solver::{decide, solve_auto, MsrInstance, SolveLimits};

    fn unit_mcc(n: usize, edges: &[(usize, usize)], classes: Vec<Vec<usize>>) -> MccInstance {
        let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        MccInstance::new(build_graph(n, &weighted).unwrap(), classes).unwrap()
    }

    fn at_budget(art: &ReductionArtifact, delta: u64) -> MsrInstance {
        MsrInstance::new(
            art.instance.metric().clone(),
            art.instance.k(),
            Some(delta),
            art.instance.variant().clone(),
        )
        .unwrap()
    }

    #[test]
    fn singleton_pair_unit_form() {
        let mcc = unit_mcc(2, &[(0, 1)], vec![vec![0], vec![1]]);
        let art = reduce_mcc_allowed_kdelta(&mcc).unwrap();
        assert_eq!(art.meta.id, ReductionId::MccAllowedKDelta);
        assert_eq!(art.instance.n(), 27);
        assert_eq!(art.instance.k(), 2);
        assert_eq!(art.instance.delta(), Some(6));
        assert!(art.problem.graph.unit());
        assert_eq!(art.instance.variant(), &Variant::AllowedCenters(vec![0, 1]));

        // Vertex 1's gadget hangs off the bridge, so the two members sit
        // seven apart while each stays adjacent to its own apex.
        assert_eq!(art.instance.metric().dist(0, 1), 7);
        assert_eq!(art.roles[2], Role::Apex { class: 1 });
        assert!(matches!(art.roles[10], Role::Subdivision { .. }));

        let report = solve_auto(&art.instance, &SolveLimits::default()).unwrap();
        assert_eq!(report.optimal_cost, 6);
        assert!(!decide(&at_budget(&art, 5), &SolveLimits::default()).unwrap());
    }

    // Six-vertex source with classes {0,1}, {2,3,4}, {5}; the pairwise
    // adjacent transversal is {0, 2, 5}.
    fn three_class_source() -> MccInstance {
        unit_mcc(
            6,
            &[
                (0, 2),
                (2, 5),
                (1, 2),
                (1, 4),
                (0, 5),
                (4, 3),
                (3, 2),
                (3, 5),
            ],
            vec![vec![0, 1], vec![2, 3, 4], vec![5]],
        )
    }

    #[test]
    fn three_class_unit_form() {
        let art = reduce_mcc_allowed_kdelta(&three_class_source()).unwrap();
        assert_eq!(art.instance.n(), 138);
        assert_eq!(art.instance.k(), 3);
        assert_eq!(art.instance.delta(), Some(14));
        assert_eq!(
            art.instance.variant(),
            &Variant::AllowedCenters(vec![0, 1, 2, 3, 4, 5])
        );
        // The stranded singleton class sits one unit past the canonical
        // cross-class distance from vertex 0.
        assert_eq!(art.instance.metric().dist(0, 5), 11);
    }

    #[test]
    fn tight_budgets_can_fail_after_subdivision() {
        // Class 1 has two members and the source has a transversal
        // clique, so the weighted form meets its budget.
        let mcc = unit_mcc(3, &[(0, 2), (1, 2)], vec![vec![0, 1], vec![2]]);
        let weighted = reduce_mcc_weighted_bipartite(&mcc).unwrap();
        assert!(decide(&weighted.instance, &SolveLimits::default()).unwrap());

        // The unit form also needs the leaf-path interiors of the member
        // not chosen as a center, and those sit at distance 3 from every
        // eligible center when the budget affords only 2.
        let unit = reduce_mcc_allowed_kdelta(&mcc).unwrap();
        assert_eq!(unit.instance.n(), 31);
        assert!(!decide(&unit.instance, &SolveLimits::default()).unwrap());
    }

    #[test]
    fn anchor_unit_form_keeps_feedback_property() {
        let mcc = unit_mcc(2, &[(0, 1)], vec![vec![0], vec![1]]);
        let art = reduce_mcc_allowed_fvs(&mcc).unwrap();
        assert_eq!(art.meta.id, ReductionId::MccAllowedFvs);
        assert_eq!(art.instance.n(), 659);
        assert_eq!(art.instance.k(), 4);
        assert_eq!(art.instance.delta(), Some(110));
        assert_eq!(
            art.instance.variant(),
            &Variant::AllowedCenters(vec![2, 3, 4, 5])
        );

        // Member paths tile exactly at the forced radii, so the adjacent
        // pair is feasible at the budget and infeasible one below it.
        assert!(decide(&art.instance, &SolveLimits::default()).unwrap());
        assert!(!decide(&at_budget(&art, 109), &SolveLimits::default()).unwrap());
    }

    #[test]
    fn trivial_no_propagates() {
        let mcc = unit_mcc(2, &[], vec![vec![0], vec![1]]);
        assert_eq!(
            reduce_mcc_allowed_kdelta(&mcc).unwrap_err(),
            ReductionError::TrivialNo { i: 1, j: 2 }
        );
    }
}
