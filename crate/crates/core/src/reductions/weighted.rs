//! Multicolored-clique source to weighted bipartite clustering instance.
//!
//! Each class `i` (1-based) gets an apex joined to its members at
//! `2^(i-1)` and `k + 1` leaves joined to its members at `2^i`. Each
//! cross-class non-adjacent pair `{u, v}` with `u` in class `i`, `v` in
//! class `j` gets a point joined to the rest of class `i` at `2^i` and
//! the rest of class `j` at `2^j`. Source edges are not copied; members
//! of one class reach each other through their apex. The budget is
//! `2^(k+1) - 2`, met exactly when one member per class is chosen as a
//! center with radius `2^i`, which is possible iff the chosen members
//! are pairwise adjacent.

use crate::graph::{build_graph, is_bipartite};
use crate::solver::{Clustering, Variant};

use super::{
    satellite_components, ExtractError, MccInstance, MsrProblem, ReductionArtifact,
    ReductionError, ReductionId, ReductionMeta, Role, MAX_CONSTRUCTION_WEIGHT,
};

const MAX_POINTS: usize = 1_000_000;

pub fn reduce_mcc_weighted_bipartite(
    mcc: &MccInstance,
) -> Result<ReductionArtifact, ReductionError> {
    let k = mcc.k();
    if k < 2 {
        return Err(ReductionError::KTooSmall { k });
    }
    if k + 1 >= 63 {
        return Err(ReductionError::SizeGuard {
            what: "class count",
            size: k as u128,
            cap: 61,
        });
    }
    let delta = (1u64 << (k + 1)) - 2;
    debug_assert!(delta < MAX_CONSTRUCTION_WEIGHT);

    let classes = mcc.classes();
    for i in 0..k {
        for j in i + 1..k {
            if classes[i].len() == 1
                && classes[j].len() == 1
                && !mcc.graph().has_edge(classes[i][0], classes[j][0])
            {
                return Err(ReductionError::TrivialNo { i: i + 1, j: j + 1 });
            }
        }
    }

    let n = mcc.n();
    let non_edges = mcc.cross_non_edges();
    let apex = |i: usize| n + (i - 1);
    let leaf_base = n + k;
    let leaf = |i: usize, t: usize| leaf_base + (i - 1) * (k + 1) + t;
    let ne_base = leaf_base + k * (k + 1);
    let points = ne_base + non_edges.len();
    if points > MAX_POINTS {
        return Err(ReductionError::SizeGuard {
            what: "points",
            size: points as u128,
            cap: MAX_POINTS as u128,
        });
    }

    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for i in 1..=k {
        for &v in &classes[i - 1] {
            edges.push((apex(i), v, 1u64 << (i - 1)));
        }
        for t in 0..=k {
            for &v in &classes[i - 1] {
                edges.push((leaf(i, t), v, 1u64 << i));
            }
        }
    }
    for (idx, &(u, v)) in non_edges.iter().enumerate() {
        let i = mcc.class_of(u);
        let j = mcc.class_of(v);
        let p = ne_base + idx;
        for &z in &classes[i - 1] {
            if z != u {
                edges.push((p, z, 1u64 << i));
            }
        }
        for &z in &classes[j - 1] {
            if z != v {
                edges.push((p, z, 1u64 << j));
            }
        }
    }
    // Stranded class gadgets attach through their lowest apex, one unit
    // above the canonical cross-class member distance: members of class j
    // end up at 2^i0 + 2^j + 1 from vertex 0, so no budgeted ball reaches
    // across cheaper, while the bridge interior created by unit
    // subdivision splits exactly between the vertex-0 and class-j balls.
    let i0 = mcc.class_of(0);
    for comp in satellite_components(points, &edges)? {
        let a = comp
            .iter()
            .copied()
            .filter(|&v| (n..n + k).contains(&v))
            .min()
            .expect("every satellite component carries an apex");
        let j = a - n + 1;
        edges.push((0, a, (1u64 << i0) + (1u64 << (j - 1)) + 1));
    }

    let graph = build_graph(points, &edges)?;
    assert!(
        is_bipartite(&graph).is_some(),
        "every edge joins an original to a gadget point"
    );

    let mut roles = Vec::with_capacity(points);
    for v in 0..n {
        roles.push(Role::Original {
            vertex: v,
            class: Some(mcc.class_of(v)),
        });
    }
    for i in 1..=k {
        roles.push(Role::Apex { class: i });
    }
    for i in 1..=k {
        for t in 0..=k {
            roles.push(Role::Leaf {
                class: i,
                sign: None,
                index: t,
            });
        }
    }
    for &(u, v) in &non_edges {
        roles.push(Role::NonEdge { u, v });
    }

    let problem = MsrProblem {
        graph,
        k,
        delta: Some(delta),
        variant: Variant::Standard,
    };
    let meta = ReductionMeta {
        id: ReductionId::MccWeightedBipartite,
        k_source: k,
        n_per_class: None,
        budget: delta,
        omega_plus: Vec::new(),
        omega_minus: Vec::new(),
    };
    ReductionArtifact::build(problem, roles, meta)
}

/// Reads a clustering's centers back as one source vertex per class.
/// Requires every center to be an original vertex and every class to be
/// chosen exactly once; adjacency of the result is not checked here.
pub fn extract_clique_weighted(
    artifact: &ReductionArtifact,
    clustering: &Clustering,
) -> Result<Vec<usize>, ExtractError> {
    let k = artifact.meta.k_source;
    let pairs = clustering.pairs();
    if pairs.len() != k {
        return Err(ExtractError::WrongPairCount {
            got: pairs.len(),
            want: k,
        });
    }
    let mut picks: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for &(c, _) in pairs {
        match artifact.roles.get(c) {
            Some(Role::Original {
                vertex,
                class: Some(i),
            }) => picks[*i].push(*vertex),
            _ => return Err(ExtractError::NotOriginal { center: c }),
        }
    }
    let mut clique = Vec::with_capacity(k);
    for (i, pick) in picks.iter().enumerate().skip(1) {
        match pick.as_slice() {
            [v] => clique.push(*v),
            s => {
                return Err(ExtractError::ClassMultiplicity {
                    class: i,
                    count: s.len(),
                })
            }
        }
    }
    Ok(clique)
}

/// Clustering a multicolored clique induces: each clique member becomes
/// a center with radius `2^i` for its class `i`. Valid with cost equal
/// to the instance budget whenever the input really is one vertex per
/// class, pairwise adjacent in the source.
pub fn forward_clustering_weighted(artifact: &ReductionArtifact, clique: &[usize]) -> Clustering {
    let k = artifact.meta.k_source;
    assert_eq!(clique.len(), k, "need one vertex per class");
    let mut seen = vec![false; k + 1];
    let mut pairs = Vec::with_capacity(k);
    for &v in clique {
        let Some(Role::Original {
            class: Some(i), ..
        }) = artifact.roles.get(v)
        else {
            panic!("clique members must be original vertices");
        };
        assert!(!seen[*i], "two clique members share class {i}");
        seen[*i] = true;
        pairs.push((v, 1u64 << i));
    }
    Clustering::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{verify_clustering, Verdict};

    fn unit_mcc(n: usize, edges: &[(usize, usize)], classes: Vec<Vec<usize>>) -> MccInstance {
        let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        MccInstance::new(build_graph(n, &weighted).unwrap(), classes).unwrap()
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
    fn three_class_layout() {
        let art = reduce_mcc_weighted_bipartite(&three_class_source()).unwrap();
        assert_eq!(art.instance.n(), 26);
        assert_eq!(art.instance.delta(), Some(14));
        assert_eq!(art.instance.k(), 3);
        assert_eq!(art.meta.budget, 14);
        assert_eq!(art.problem.variant, Variant::Standard);

        assert_eq!(
            art.roles[0],
            Role::Original {
                vertex: 0,
                class: Some(1)
            }
        );
        assert_eq!(art.roles[6], Role::Apex { class: 1 });
        assert_eq!(art.roles[8], Role::Apex { class: 3 });
        assert_eq!(
            art.roles[9],
            Role::Leaf {
                class: 1,
                sign: None,
                index: 0
            }
        );
        assert_eq!(
            art.roles[20],
            Role::Leaf {
                class: 3,
                sign: None,
                index: 3
            }
        );
        let non_edges: Vec<_> = art.roles[21..]
            .iter()
            .map(|r| match r {
                Role::NonEdge { u, v } => (*u, *v),
                other => panic!("expected non-edge role, got {other:?}"),
            })
            .collect();
        assert_eq!(non_edges, vec![(0, 3), (0, 4), (1, 3), (1, 5), (4, 5)]);

        // Class 3 is a singleton with no cross non-edges, so its gadget is
        // bridged to vertex 0 one unit above the canonical cross distance.
        assert!(art.problem.graph.edges().contains(&(0, 8, 7)));
        assert!(art.problem.graph.is_connected());
        assert_eq!(art.problem.graph.edges().iter().map(|e| e.2).max(), Some(8));

        // Originals against everything else.
        let sides = is_bipartite(&art.problem.graph).unwrap();
        assert!(sides[..6].iter().all(|&s| s == sides[0]));
        assert!(sides[6..].iter().all(|&s| s != sides[0]));

        assert_eq!(art.class_members(2), vec![2, 3, 4]);
    }

    #[test]
    fn three_class_forward_witness() {
        let art = reduce_mcc_weighted_bipartite(&three_class_source()).unwrap();
        let clustering = forward_clustering_weighted(&art, &[0, 2, 5]);
        assert_eq!(clustering.pairs(), &[(0, 2), (2, 4), (5, 8)]);
        assert_eq!(clustering.cost(), 14);
        assert_eq!(
            verify_clustering(&art.instance, &clustering),
            Verdict::Valid { cost: 14 }
        );
        assert_eq!(extract_clique_weighted(&art, &clustering), Ok(vec![0, 2, 5]));
    }

    #[test]
    fn extraction_rejects_bad_centers() {
        let art = reduce_mcc_weighted_bipartite(&three_class_source()).unwrap();
        let apex_center = Clustering::new(vec![(0, 2), (2, 4), (6, 8)]);
        assert_eq!(
            extract_clique_weighted(&art, &apex_center),
            Err(ExtractError::NotOriginal { center: 6 })
        );
        let doubled_class = Clustering::new(vec![(0, 2), (1, 2), (2, 4)]);
        assert_eq!(
            extract_clique_weighted(&art, &doubled_class),
            Err(ExtractError::ClassMultiplicity { class: 1, count: 2 })
        );
        let short = Clustering::new(vec![(0, 14)]);
        assert_eq!(
            extract_clique_weighted(&art, &short),
            Err(ExtractError::WrongPairCount { got: 1, want: 3 })
        );
    }

    #[test]
    fn adjacent_singletons_need_a_bridge() {
        // Two singleton classes joined by an edge: no cross non-edges, so
        // the class gadgets start in separate components.
        let mcc = unit_mcc(2, &[(0, 1)], vec![vec![0], vec![1]]);
        let art = reduce_mcc_weighted_bipartite(&mcc).unwrap();
        assert_eq!(art.instance.n(), 10);
        assert_eq!(art.instance.delta(), Some(6));
        assert!(art.problem.graph.is_connected());
        // Bridge from vertex 0 to the second class's apex: one above the
        // canonical cross distance 2^1 + 2^2 less the apex leg 2^1.
        assert!(art.problem.graph.edges().contains(&(0, 3, 5)));
        assert!(is_bipartite(&art.problem.graph).is_some());

        let clustering = forward_clustering_weighted(&art, &[0, 1]);
        assert_eq!(clustering.cost(), 6);
        assert_eq!(
            verify_clustering(&art.instance, &clustering),
            Verdict::Valid { cost: 6 }
        );
    }

    #[test]
    fn non_adjacent_singletons_are_a_trivial_no() {
        let mcc = unit_mcc(3, &[(1, 2)], vec![vec![0], vec![1, 2]]);
        // Classes 1 and 2 are fine (class 2 is not a singleton)...
        assert!(reduce_mcc_weighted_bipartite(&mcc).is_ok());
        // ...but two non-adjacent singletons force the answer.
        let mcc = unit_mcc(2, &[], vec![vec![0], vec![1]]);
        assert_eq!(
            reduce_mcc_weighted_bipartite(&mcc).unwrap_err(),
            ReductionError::TrivialNo { i: 1, j: 2 }
        );
    }

    #[test]
    fn single_class_rejected() {
        let mcc = unit_mcc(2, &[(0, 1)], vec![vec![0, 1]]);
        assert_eq!(
            reduce_mcc_weighted_bipartite(&mcc).unwrap_err(),
            ReductionError::KTooSmall { k: 1 }
        );
    }
}
