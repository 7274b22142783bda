//! Multicolored-clique source to a clustering instance whose point set
//! is dominated by two anchors per class; the anchors form a vertex
//! cover of the output, and, after subdivision, a feedback vertex set.
//!
//! Classes are first padded to a common size `n`. Class `i` (1-based)
//! gets anchors `x_i^+`, `x_i^-`, each with `2k + 1` private leaves at
//! weights `w_plus(i) = 2^(2i)*i*n` and `w_minus(i) = 2^(2i+1)*i*n`.
//! The class's h-th member hangs off both anchors: at `h + w_plus(i)`
//! and `n - h + 1 + w_minus(i)`. A cross-class non-adjacent pair gets a
//! point at `h + 1 + w_plus(i)` and `n - h + 1 + w_minus(i)` on each of
//! its two class sides. With budget `n*k + sum of all anchor offsets`
//! and `2k` balls, an optimal solution must center every anchor, and
//! splitting class `i`'s slack `n` at a position `h_i` in `1..=n`
//! covers every member while missing exactly the non-adjacency points
//! of the member at `h_i`; a multicolored clique therefore yields a
//! clustering meeting the budget exactly.
//!
//! The reverse reading has a hole this module does not try to paper
//! over: the degenerate split with radii `w_plus(i)` and
//! `n + w_minus(i)` also costs exactly the budget and covers every
//! point of every class, whatever the source graph looks like, because
//! each negative-side weight is at most `n + w_minus(i)`. The budget
//! decision on the output is therefore always yes; only split-shaped
//! clusterings encode a class position that extraction can read back.

use crate::graph::{build_graph, is_bipartite};
use crate::solver::{Clustering, Variant};

use super::{
    normalize_mcc, satellite_components, ExtractError, MccInstance, MsrProblem,
    ReductionArtifact, ReductionError, ReductionId, ReductionMeta, Role, Sign,
    MAX_CONSTRUCTION_WEIGHT,
};

const MAX_POINTS: usize = 1_000_000;

fn offsets(k: usize, n: usize) -> Result<(Vec<u64>, Vec<u64>, u64), ReductionError> {
    let mut plus = Vec::with_capacity(k);
    let mut minus = Vec::with_capacity(k);
    let mut budget = (n as u128) * (k as u128);
    for i in 1..=k as u128 {
        if 2 * i + 1 >= 63 {
            return Err(ReductionError::SizeGuard {
                what: "class count",
                size: k as u128,
                cap: 30,
            });
        }
        let wp = (1u128 << (2 * i)) * i * n as u128;
        let wm = (1u128 << (2 * i + 1)) * i * n as u128;
        budget += wp + wm;
        if budget >= MAX_CONSTRUCTION_WEIGHT as u128 {
            return Err(ReductionError::SizeGuard {
                what: "budget",
                size: budget,
                cap: MAX_CONSTRUCTION_WEIGHT as u128,
            });
        }
        plus.push(wp as u64);
        minus.push(wm as u64);
    }
    Ok((plus, minus, budget as u64))
}

pub fn reduce_mcc_vertex_cover(mcc: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    let k = mcc.k();
    if k < 2 {
        return Err(ReductionError::KTooSmall { k });
    }
    let norm = normalize_mcc(mcc)?;
    let classes = norm.classes();
    let n = classes[0].len();
    let (omega_plus, omega_minus, delta) = offsets(k, n)?;

    let norm_n = norm.n();
    let non_edges = norm.cross_non_edges();
    let anchor = |i: usize, sign: Sign| {
        norm_n
            + 2 * (i - 1)
            + match sign {
                Sign::Plus => 0,
                Sign::Minus => 1,
            }
    };
    let leaf_base = norm_n + 2 * k;
    let leaves_per_side = 2 * k + 1;
    let leaf = |i: usize, sign: Sign, t: usize| {
        leaf_base
            + (i - 1) * 2 * leaves_per_side
            + match sign {
                Sign::Plus => 0,
                Sign::Minus => leaves_per_side,
            }
            + t
    };
    let ne_base = leaf_base + k * 2 * leaves_per_side;
    let points = ne_base + non_edges.len();
    if points > MAX_POINTS {
        return Err(ReductionError::SizeGuard {
            what: "points",
            size: points as u128,
            cap: MAX_POINTS as u128,
        });
    }

    // 1-based position of each vertex inside its class.
    let mut pos = vec![0usize; norm_n];
    for class in classes {
        for (h, &v) in class.iter().enumerate() {
            pos[v] = h + 1;
        }
    }

    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for i in 1..=k {
        let wp = omega_plus[i - 1];
        let wm = omega_minus[i - 1];
        for t in 0..leaves_per_side {
            edges.push((leaf(i, Sign::Plus, t), anchor(i, Sign::Plus), wp));
            edges.push((leaf(i, Sign::Minus, t), anchor(i, Sign::Minus), wm));
        }
        for &v in &classes[i - 1] {
            let h = pos[v] as u64;
            edges.push((anchor(i, Sign::Plus), v, h + wp));
            edges.push((anchor(i, Sign::Minus), v, n as u64 - h + 1 + wm));
        }
    }
    for (idx, &(u, v)) in non_edges.iter().enumerate() {
        let p = ne_base + idx;
        for side in [u, v] {
            let i = norm.class_of(side);
            let h = pos[side] as u64;
            let wp = omega_plus[i - 1];
            let wm = omega_minus[i - 1];
            edges.push((anchor(i, Sign::Plus), p, h + 1 + wp));
            edges.push((anchor(i, Sign::Minus), p, n as u64 - h + 1 + wm));
        }
    }
    // Stranded class gadgets attach from the base component's positive
    // anchor to one leaf of their own positive anchor, two units above
    // the base anchor's offset: the intended base ball (radius at least
    // 1 + offset) then swallows the bridge and all its subdivision
    // interiors, the far leaf stays covered by its own anchor, and cross
    // reach through the bridge still costs a full foreign offset.
    let i0 = norm.class_of(0);
    for comp in satellite_components(points, &edges)? {
        let a = comp
            .iter()
            .copied()
            .filter(|&v| (norm_n..norm_n + 2 * k).contains(&v))
            .min()
            .expect("every satellite component carries an anchor");
        let j = (a - norm_n) / 2 + 1;
        edges.push((
            anchor(i0, Sign::Plus),
            leaf(j, Sign::Plus, 0),
            omega_plus[i0 - 1] + 2,
        ));
    }

    let graph = build_graph(points, &edges)?;
    assert!(
        is_bipartite(&graph).is_some(),
        "every edge has an anchor endpoint, and anchors are independent"
    );
    let is_anchor = |v: usize| (norm_n..norm_n + 2 * k).contains(&v);
    assert!(
        graph.edges().iter().all(|&(a, b, _)| is_anchor(a) || is_anchor(b)),
        "anchors must cover every edge"
    );

    let mut roles = Vec::with_capacity(points);
    for v in 0..norm_n {
        roles.push(Role::Original {
            vertex: v,
            class: Some(norm.class_of(v)),
        });
    }
    for i in 1..=k {
        roles.push(Role::Anchor {
            class: i,
            sign: Sign::Plus,
        });
        roles.push(Role::Anchor {
            class: i,
            sign: Sign::Minus,
        });
    }
    for i in 1..=k {
        for sign in [Sign::Plus, Sign::Minus] {
            for t in 0..leaves_per_side {
                roles.push(Role::Leaf {
                    class: i,
                    sign: Some(sign),
                    index: t,
                });
            }
        }
    }
    for &(u, v) in &non_edges {
        roles.push(Role::NonEdge { u, v });
    }

    let problem = MsrProblem {
        graph,
        k: 2 * k,
        delta: Some(delta),
        variant: Variant::Standard,
    };
    let meta = ReductionMeta {
        id: ReductionId::MccVertexCover,
        k_source: k,
        n_per_class: Some(n),
        budget: delta,
        omega_plus,
        omega_minus,
    };
    let artifact = ReductionArtifact::build(problem, roles, meta)?;
    // Every construction edge is a geodesic: any detour around an edge
    // pays at least one extra anchor offset.
    for &(u, v, w) in artifact.problem.graph.edges() {
        assert_eq!(artifact.instance.metric().dist(u, v), w);
    }
    Ok(artifact)
}

/// Reads a clustering back as one source vertex per class: every center
/// must be an anchor, and each positive anchor's radius, less its class
/// offset, must land on a class position `1..=n`. Radii of negative
/// anchors are not consulted. Adjacency of the result is not checked.
pub fn extract_clique_vertex_cover(
    artifact: &ReductionArtifact,
    clustering: &Clustering,
) -> Result<Vec<usize>, ExtractError> {
    let k = artifact.meta.k_source;
    let n = artifact.meta.n_per_class.expect("cover artifacts store the class size") as u64;
    let pairs = clustering.pairs();
    if pairs.len() != 2 * k {
        return Err(ExtractError::WrongPairCount {
            got: pairs.len(),
            want: 2 * k,
        });
    }
    let mut position = vec![None::<u64>; k + 1];
    for &(c, r) in pairs {
        let Some(Role::Anchor { class: i, sign }) = artifact.roles.get(c) else {
            return Err(ExtractError::NotAnchor { center: c });
        };
        if *sign == Sign::Minus {
            continue;
        }
        let h = r
            .checked_sub(artifact.meta.omega_plus[*i - 1])
            .filter(|h| (1..=n).contains(h))
            .ok_or(ExtractError::RadiusOutOfRange { center: c, radius: r })?;
        position[*i] = Some(h);
    }
    // 2k canonical pairs over the 2k anchors hit every anchor once.
    let mut clique = Vec::with_capacity(k);
    for i in 1..=k {
        let h = position[i].expect("distinct anchor centers fill every positive slot");
        clique.push(artifact.class_members(i)[h as usize - 1]);
    }
    Ok(clique)
}

/// Clustering a multicolored clique of the normalized source induces:
/// for the member at position `h` of class `i`, center `x_i^+` with
/// radius `h + w_plus(i)` and `x_i^-` with radius `n - h + w_minus(i)`.
/// Valid with cost equal to the budget whenever the input is one vertex
/// per class, pairwise adjacent.
pub fn forward_clustering_vertex_cover(
    artifact: &ReductionArtifact,
    clique: &[usize],
) -> Clustering {
    let k = artifact.meta.k_source;
    let n = artifact.meta.n_per_class.expect("cover artifacts store the class size") as u64;
    assert_eq!(clique.len(), k, "need one vertex per class");
    let norm_n = artifact
        .roles
        .iter()
        .filter(|r| matches!(r, Role::Original { .. }))
        .count();
    let mut pairs = Vec::with_capacity(2 * k);
    let mut seen = vec![false; k + 1];
    for &v in clique {
        let Some(Role::Original {
            class: Some(i), ..
        }) = artifact.roles.get(v)
        else {
            panic!("clique members must be original vertices");
        };
        let i = *i;
        assert!(!seen[i], "two clique members share class {i}");
        seen[i] = true;
        let h = artifact
            .class_members(i)
            .binary_search(&v)
            .expect("role and class listings agree") as u64
            + 1;
        pairs.push((norm_n + 2 * (i - 1), h + artifact.meta.omega_plus[i - 1]));
        pairs.push((
            norm_n + 2 * (i - 1) + 1,
            n - h + artifact.meta.omega_minus[i - 1],
        ));
    }
    Clustering::new(pairs)
}
