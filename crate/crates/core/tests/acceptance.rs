//! End-to-end acceptance suite. Each test prints one `criterion N:
//! pass/fail` line and then asserts every leg of that criterion, so a
//! red test always names what it checked in its output.

use std::time::{Duration, Instant};

use msr_core::graph::build_graph;
use msr_core::harness::{
    exhaustive_connected_graphs, exhaustive_mcc_sources, fuzz_equivalence, fuzz_exhaustive,
    is_multicolored_clique, random_graph, solve_mcc_bruteforce, FuzzConfig,
};
use msr_core::metric::shortest_path_metric;
use msr_core::params::{is_feedback_vertex_set, structural_profile};
use msr_core::reductions::{
    extract_clique_weighted, normalize_mcc, reduce_mcc_allowed_fvs, reduce_mcc_allowed_kdelta,
    reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite, MccInstance, ReductionArtifact,
    ReductionError, ReductionId, Role,
};
use msr_core::solver::{
    decide, solve_auto, solve_branch_bound, solve_cover_dp, solve_enumerate, verify_clustering,
    MsrInstance, SolveError, SolveLimits, Variant,
};

fn report(criterion: usize, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "pass" } else { "fail" }
    );
}

fn limits() -> SolveLimits {
    SolveLimits::default()
}

/// Six vertices in classes {0,1}, {2,3,4}, {5}; transversal {0,2,5}.
fn three_class_source() -> MccInstance {
    MccInstance::new(
        build_graph(
            6,
            &[
                (0, 2, 1),
                (2, 5, 1),
                (1, 2, 1),
                (1, 4, 1),
                (0, 5, 1),
                (4, 3, 1),
                (3, 2, 1),
                (3, 5, 1),
            ],
        )
        .unwrap(),
        vec![vec![0, 1], vec![2, 3, 4], vec![5]],
    )
    .unwrap()
}

/// Two classes of two with a perfect matching across them.
fn two_by_two_source() -> MccInstance {
    MccInstance::new(
        build_graph(4, &[(0, 2, 1), (1, 3, 1)]).unwrap(),
        vec![vec![0, 1], vec![2, 3]],
    )
    .unwrap()
}

/// Deterministic solver corpus: connected graphs with at most eight
/// points, unit and weighted, budgets open, all three variants.
fn solver_corpus() -> Vec<MsrInstance> {
    let mut out = Vec::new();
    for seed in 0..180u64 {
        let n = 2 + (seed % 7) as usize;
        let p = [0.15, 0.35, 0.6, 0.9][(seed % 4) as usize];
        let w = if seed % 2 == 0 { 1 } else { 5 };
        let g = random_graph(seed * 7 + 1, n, p, w);
        let metric = shortest_path_metric(&g).unwrap();
        for k in 1..=3usize {
            let variant = match (seed as usize + k) % 3 {
                0 => Variant::Standard,
                1 => Variant::ExactNonZero,
                _ => Variant::AllowedCenters((0..n).step_by(2).collect()),
            };
            let k_eff = if matches!(variant, Variant::ExactNonZero) {
                k.min(n)
            } else {
                k
            };
            out.push(MsrInstance::new(metric.clone(), k_eff, None, variant).unwrap());
        }
    }
    out
}

#[test]
fn criterion_1_three_solvers_agree_on_random_instances() {
    let t0 = Instant::now();
    let corpus = solver_corpus();
    assert!(corpus.len() >= 500, "corpus holds {}", corpus.len());

    let mut checked = 0usize;
    for inst in &corpus {
        let dp = solve_cover_dp(inst, &limits()).unwrap();
        let bb = solve_branch_bound(inst, &limits()).unwrap();
        let en = solve_enumerate(inst, &limits()).unwrap();
        assert_eq!(dp.optimal_cost, bb.optimal_cost, "dp vs bb on {inst:?}");
        assert_eq!(dp.optimal_cost, en.optimal_cost, "dp vs enum on {inst:?}");
        for rep in [&dp, &bb, &en] {
            let verdict = verify_clustering(inst, &rep.clustering);
            assert!(
                verdict.is_valid(),
                "{:?} witness rejected: {verdict:?} on {inst:?}",
                rep.algorithm
            );
            assert_eq!(rep.clustering.cost(), rep.optimal_cost);
        }
        checked += 1;
    }
    let elapsed = t0.elapsed();
    let ok = checked >= 500 && elapsed < Duration::from_secs(60);
    report(
        1,
        ok,
        &format!("{checked} instances, three solvers agree, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_2_golden_three_class_instance() {
    let t0 = Instant::now();
    let src = three_class_source();
    let art = reduce_mcc_weighted_bipartite(&src).unwrap();
    assert_eq!(art.problem.graph.n(), 26);
    assert_eq!(art.problem.k, 3);
    assert_eq!(art.meta.budget, 14);

    let rep = solve_branch_bound(&art.instance, &limits()).unwrap();
    assert_eq!(rep.optimal_cost, 14);
    assert!(!decide(&art.instance.with_delta(Some(13)), &limits()).unwrap());

    let pick = extract_clique_weighted(&art, &rep.clustering).unwrap();
    let norm = normalize_mcc(&src).unwrap();
    assert!(is_multicolored_clique(&norm, &pick));
    assert!(solve_mcc_bruteforce(&src).unwrap().is_some());

    let elapsed = t0.elapsed();
    let ok = elapsed < Duration::from_secs(60);
    report(
        2,
        ok,
        &format!("26 points, optimum 14, tight at 13, witness {pick:?}, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_3_weighted_bipartite_equivalence() {
    let t0 = Instant::now();
    let ex = fuzz_exhaustive(ReductionId::MccWeightedBipartite, 2, None).unwrap();
    let cfg = FuzzConfig {
        trials: 200,
        seed: 101,
        k_max: 3,
        class_max: 3,
        ..FuzzConfig::default()
    };
    let rnd = fuzz_equivalence(ReductionId::MccWeightedBipartite, &cfg).unwrap();

    let elapsed = t0.elapsed();
    let ok = ex.trials == 22
        && ex.is_clean()
        && rnd.trials == 200
        && rnd.is_clean()
        && elapsed < Duration::from_secs(300);
    report(
        3,
        ok,
        &format!(
            "exhaustive {} trials, random {} trials, {} mismatches, {} witness failures, {elapsed:.2?}",
            ex.trials,
            rnd.trials,
            ex.mismatches.len() + rnd.mismatches.len(),
            ex.witness_failures.len() + rnd.witness_failures.len()
        ),
    );
    assert!(ok, "exhaustive:\n{ex}random:\n{rnd}");
}

#[test]
fn criterion_4_anchor_construction_equivalence() {
    let t0 = Instant::now();
    let src = two_by_two_source();
    let art = reduce_mcc_vertex_cover(&src).unwrap();
    assert_eq!(art.meta.budget, 220);
    assert_eq!(art.meta.omega_plus, vec![8, 64]);
    assert_eq!(art.meta.omega_minus, vec![16, 128]);

    let anchors: Vec<usize> = art
        .roles
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, Role::Anchor { .. }))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(anchors.len(), 2 * src.k());
    for &(u, v, _) in art.problem.graph.edges() {
        assert!(
            anchors.contains(&u) || anchors.contains(&v),
            "edge ({u},{v}) misses the anchor cover"
        );
    }
    let metric = shortest_path_metric(&art.problem.graph).unwrap();
    for &(u, v, w) in art.problem.graph.edges() {
        assert_eq!(metric.dist(u, v), w, "edge ({u},{v}) is not geodesic");
    }

    let ex = fuzz_exhaustive(ReductionId::MccVertexCover, 2, None).unwrap();
    let cfg = FuzzConfig {
        trials: 100,
        seed: 7,
        k_max: 2,
        class_max: 3,
        timeout: Some(Duration::from_secs(20)),
        ..FuzzConfig::default()
    };
    let rnd = fuzz_equivalence(ReductionId::MccVertexCover, &cfg).unwrap();

    let elapsed = t0.elapsed();
    let ok = ex.is_clean() && rnd.is_clean() && elapsed < Duration::from_secs(600);
    report(
        4,
        ok,
        &format!(
            "goldens hold (budget 220, weights 8/16/64/128, anchor cover of size 4, geodesic edges); equivalence: {} exhaustive and {} random mismatches, {elapsed:.2?}",
            ex.mismatches.len(),
            rnd.mismatches.len()
        ),
    );
    // The budget decision of this construction does not depend on the
    // source: a per-class split into one ball of radius w+ and one of
    // radius n + w- costs exactly the budget and covers everything, so
    // sources without a transversal clique still answer yes. The
    // disagreements below are that defect, not a solver fault; the
    // module documentation of the construction works through it.
    assert!(ok, "exhaustive:\n{ex}random:\n{rnd}");
}

#[test]
fn criterion_5_completion_preserves_decisions() {
    let t0 = Instant::now();
    let mut total = 0;
    let mut reports = Vec::new();
    for id in [
        ReductionId::AugmentComplete,
        ReductionId::AugmentCompleteBipartite,
    ] {
        let cfg = FuzzConfig {
            trials: 60,
            seed: 23,
            n_max: 7,
            ..FuzzConfig::default()
        };
        let rep = fuzz_equivalence(id, &cfg).unwrap();
        total += rep.trials;
        reports.push(rep);
    }
    let elapsed = t0.elapsed();
    let ok = total >= 100 && reports.iter().all(|r| r.is_clean());
    report(
        5,
        ok,
        &format!("{total} augmented instances, decisions preserved, outputs verified complete, {elapsed:.2?}"),
    );
    assert!(ok, "{}{}", reports[0], reports[1]);
}

#[test]
fn criterion_6_domination_equivalence_exhaustive() {
    let t0 = Instant::now();
    let rep = fuzz_exhaustive(ReductionId::DsExact, 7, None).unwrap();
    let elapsed = t0.elapsed();
    let ok = rep.trials > 10_000 && rep.is_clean() && elapsed < Duration::from_secs(300);
    report(
        6,
        ok,
        &format!(
            "{} sources up to seven vertices, {} mismatches, {elapsed:.2?}",
            rep.trials,
            rep.mismatches.len()
        ),
    );
    assert!(ok, "{rep}");
}

fn build_or_screen(
    build: impl Fn(&MccInstance) -> Result<ReductionArtifact, ReductionError>,
    src: &MccInstance,
) -> Option<ReductionArtifact> {
    match build(src) {
        Ok(art) => Some(art),
        Err(ReductionError::TrivialNo { .. }) => None,
        Err(e) => panic!("construction failed: {e}"),
    }
}

#[test]
fn criterion_7_unit_forms_against_weighted_preimages() {
    let t0 = Instant::now();
    let sources = exhaustive_mcc_sources(2);
    let mut distance_violations = 0usize;
    let mut fvs_violations = 0usize;
    let mut divergences = 0usize;
    let mut compared = 0usize;

    for src in &sources {
        let pairs: [(
            fn(&MccInstance) -> Result<ReductionArtifact, ReductionError>,
            fn(&MccInstance) -> Result<ReductionArtifact, ReductionError>,
            bool,
        ); 2] = [
            (reduce_mcc_weighted_bipartite, reduce_mcc_allowed_kdelta, false),
            (reduce_mcc_vertex_cover, reduce_mcc_allowed_fvs, true),
        ];
        for (weighted_build, unit_build, check_fvs) in pairs {
            let weighted = build_or_screen(weighted_build, src);
            let unit = build_or_screen(unit_build, src);
            assert_eq!(weighted.is_some(), unit.is_some(), "screens disagree");
            let (Some(weighted), Some(unit)) = (weighted, unit) else {
                continue;
            };

            let wm = shortest_path_metric(&weighted.problem.graph).unwrap();
            let um = shortest_path_metric(&unit.problem.graph).unwrap();
            let base = weighted.problem.graph.n();
            for i in 0..base {
                for j in i + 1..base {
                    if wm.dist(i, j) != um.dist(i, j) {
                        distance_violations += 1;
                    }
                }
            }

            if check_fvs {
                let anchors: Vec<usize> = unit
                    .roles
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| matches!(r, Role::Anchor { .. }))
                    .map(|(i, _)| i)
                    .collect();
                if !is_feedback_vertex_set(&unit.problem.graph, &anchors) {
                    fvs_violations += 1;
                }
            }

            let wd = decide(&weighted.instance, &limits()).unwrap();
            let ud = decide(&unit.instance, &limits()).unwrap();
            compared += 1;
            if wd != ud {
                divergences += 1;
            }
        }
    }

    let elapsed = t0.elapsed();
    let ok = distance_violations == 0 && fvs_violations == 0 && divergences == 0 && compared > 0;
    report(
        7,
        ok,
        &format!(
            "{compared} instance pairs: {distance_violations} distance violations, {fvs_violations} feedback-set violations, {divergences} budget-decision divergences, {elapsed:.2?}"
        ),
    );
    // Distances and the feedback property survive subdivision, and
    // that holds here. The budget decision does not: center placement
    // in the unit forms is restricted to pre-subdivision points, whose
    // forced radii end one short of each neighboring subdivision chain,
    // so a weighted yes can turn into a unit no (and for the anchor
    // family the weighted side is constant-yes to begin with). The
    // divergence count above is that gap, measured, not a solver fault;
    // the module documentation of the unit builders works through it.
    assert!(ok);
}

#[test]
fn criterion_8_structural_parameter_bounds() {
    let t0 = Instant::now();
    let mut graphs = Vec::new();
    for n in 1..=5 {
        graphs.extend(exhaustive_connected_graphs(n));
    }
    let exhaustive_count = graphs.len();
    for seed in 0..200u64 {
        let n = 2 + (seed % 6) as usize;
        let p = [0.2, 0.5, 0.8][(seed % 3) as usize];
        graphs.push(random_graph(9_000 + seed, n, p, 1));
    }

    let mut violations = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let metric = shortest_path_metric(g).unwrap();
        let prof = structural_profile(g, &metric).unwrap();
        let ell = prof.longest_path;
        let log_ell = if ell <= 1 {
            0
        } else {
            usize::BITS as usize - (ell - 1).leading_zeros() as usize
        };
        if prof.treewidth > prof.treedepth {
            violations.push(format!("graph {i}: tw {} > td {}", prof.treewidth, prof.treedepth));
        }
        if log_ell > prof.treedepth || prof.treedepth > ell {
            violations.push(format!(
                "graph {i}: td {} outside [{log_ell}, {ell}]",
                prof.treedepth
            ));
        }
        if prof.neighborhood_max > 1 << prof.treedepth {
            violations.push(format!(
                "graph {i}: {} ball patterns exceed 2^td = {}",
                prof.neighborhood_max,
                1 << prof.treedepth
            ));
        }
        if prof.neighborhood_max > ell {
            violations.push(format!(
                "graph {i}: {} ball patterns exceed longest path {ell}",
                prof.neighborhood_max
            ));
        }
    }

    let elapsed = t0.elapsed();
    let ok = violations.is_empty()
        && exhaustive_count == 1 + 1 + 4 + 38 + 728
        && graphs.len() >= exhaustive_count + 200
        && elapsed < Duration::from_secs(300);
    report(
        8,
        ok,
        &format!(
            "{} graphs ({} exhaustive to five vertices, 200 random to seven), {} violations, {elapsed:.2?}",
            graphs.len(),
            exhaustive_count,
            violations.len()
        ),
    );
    assert!(ok, "{violations:?}");
}

#[test]
fn criterion_9_budget_pruning_matches_open_solves() {
    let t0 = Instant::now();
    let corpus = solver_corpus();
    let mut checked = 0usize;
    for inst in corpus.iter().take(150) {
        let opt = solve_auto(inst, &limits()).unwrap().optimal_cost;
        for delta in [opt.checked_sub(1), Some(opt)].into_iter().flatten() {
            let capped = inst.with_delta(Some(delta));
            let expect = opt <= delta;
            assert_eq!(decide(&capped, &limits()).unwrap(), expect);
            for solve in [solve_cover_dp, solve_branch_bound, solve_enumerate] {
                match solve(&capped, &limits()) {
                    Ok(rep) => {
                        assert!(expect, "budget {delta} below optimum {opt} was satisfied");
                        assert_eq!(rep.optimal_cost, opt);
                        assert!(rep.clustering.cost() <= delta);
                    }
                    Err(SolveError::Infeasible) => {
                        assert!(!expect, "budget {delta} at optimum {opt} was refused")
                    }
                    Err(e) => panic!("unexpected solver error: {e}"),
                }
            }
        }
        checked += 1;
    }
    let elapsed = t0.elapsed();
    let ok = checked == 150;
    report(
        9,
        ok,
        &format!("{checked} instances, pruned and open runs agree at and below the optimum, {elapsed:.2?}"),
    );
    assert!(ok);
}
