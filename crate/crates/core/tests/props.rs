//! Randomized invariants over the metric, parameter, and solver layers.
//! Case counts are kept modest; the seeds come from proptest so failures
//! shrink to small reproducible inputs.

use proptest::prelude::*;

use msr_core::harness::{random_graph, random_mcc, solve_mcc_bruteforce};
use msr_core::metric::shortest_path_metric;
use msr_core::params::neighborhood_profile;
use msr_core::reductions::normalize_mcc;
use msr_core::solver::{
    decide, solve_auto, solve_branch_bound, solve_cover_dp, solve_enumerate, verify_clustering,
    MsrInstance, SolveLimits, Variant,
};

fn limits() -> SolveLimits {
    SolveLimits::default()
}

fn graph_params() -> impl Strategy<Value = (u64, usize, f64, u64)> {
    (any::<u64>(), 2usize..=8, 0.0f64..=1.0, 1u64..=5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn metric_is_symmetric_with_triangle_inequality((seed, n, p, w) in graph_params()) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        for u in 0..n {
            prop_assert_eq!(m.dist(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(m.dist(u, v), m.dist(v, u));
                prop_assert!(u == v || m.dist(u, v) >= 1);
                for x in 0..n {
                    prop_assert!(m.dist(u, x) <= m.dist(u, v) + m.dist(v, x));
                }
            }
        }
    }

    #[test]
    fn balls_grow_from_center_to_whole_space((seed, n, p, w) in graph_params()) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        for c in 0..n {
            let radii = m.candidate_radii(c, None);
            prop_assert_eq!(radii[0], 0);
            prop_assert!(radii.windows(2).all(|ab| ab[0] < ab[1]));
            let mut last = 0;
            for &r in &radii {
                let size = m.ball_size(c, r);
                prop_assert!(size > last, "radius {} did not grow the ball", r);
                last = size;
            }
            prop_assert_eq!(m.ball(c, m.eccentricity(c)).len(), n);
        }
    }

    #[test]
    fn ball_pattern_counts_match_candidate_radii((seed, n, p, w) in graph_params()) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        let (counts, _) = neighborhood_profile(&m);
        for c in 0..n {
            prop_assert_eq!(counts[c], m.candidate_radii(c, None).len());
        }
    }

    #[test]
    fn solvers_agree_and_produce_valid_witnesses(
        (seed, n, p, w) in graph_params(),
        k in 1usize..=3,
        variant_pick in 0u8..3,
    ) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        let variant = match variant_pick {
            0 => Variant::Standard,
            1 => Variant::ExactNonZero,
            _ => Variant::AllowedCenters((0..n).step_by(2).collect()),
        };
        let k = if matches!(variant, Variant::ExactNonZero) { k.min(n) } else { k };
        let inst = MsrInstance::new(m, k, None, variant).unwrap();
        let dp = solve_cover_dp(&inst, &limits()).unwrap();
        let bb = solve_branch_bound(&inst, &limits()).unwrap();
        let en = solve_enumerate(&inst, &limits()).unwrap();
        prop_assert_eq!(dp.optimal_cost, bb.optimal_cost);
        prop_assert_eq!(dp.optimal_cost, en.optimal_cost);
        for rep in [dp, bb, en] {
            prop_assert!(verify_clustering(&inst, &rep.clustering).is_valid());
            prop_assert_eq!(rep.clustering.cost(), rep.optimal_cost);
        }
    }

    #[test]
    fn variant_restrictions_never_reduce_cost((seed, n, p, w) in graph_params(), k in 1usize..=3) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        let standard = MsrInstance::new(m.clone(), k, None, Variant::Standard).unwrap();
        let base = solve_auto(&standard, &limits()).unwrap().optimal_cost;

        let exact = MsrInstance::new(m.clone(), k.min(n), None, Variant::ExactNonZero).unwrap();
        prop_assert!(solve_auto(&exact, &limits()).unwrap().optimal_cost >= base);

        let all = MsrInstance::new(m.clone(), k, None, Variant::AllowedCenters((0..n).collect()))
            .unwrap();
        prop_assert_eq!(solve_auto(&all, &limits()).unwrap().optimal_cost, base);

        let half =
            MsrInstance::new(m, k, None, Variant::AllowedCenters((0..n).step_by(2).collect()))
                .unwrap();
        prop_assert!(solve_auto(&half, &limits()).unwrap().optimal_cost >= base);
    }

    #[test]
    fn more_clusters_never_cost_more((seed, n, p, w) in graph_params(), k in 1usize..=3) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        let coarse = MsrInstance::new(m.clone(), k, None, Variant::Standard).unwrap();
        let fine = MsrInstance::new(m, k + 1, None, Variant::Standard).unwrap();
        let coarse_cost = solve_auto(&coarse, &limits()).unwrap().optimal_cost;
        let fine_cost = solve_auto(&fine, &limits()).unwrap().optimal_cost;
        prop_assert!(fine_cost <= coarse_cost);
    }

    #[test]
    fn budget_decision_matches_optimum(
        (seed, n, p, w) in graph_params(),
        k in 1usize..=3,
        delta in 0u64..=40,
    ) {
        let m = shortest_path_metric(&random_graph(seed, n, p, w)).unwrap();
        let open = MsrInstance::new(m.clone(), k, None, Variant::Standard).unwrap();
        let opt = solve_auto(&open, &limits()).unwrap().optimal_cost;
        let capped = MsrInstance::new(m, k, Some(delta), Variant::Standard).unwrap();
        prop_assert_eq!(decide(&capped, &limits()).unwrap(), opt <= delta);
    }

    #[test]
    fn class_padding_preserves_clique_existence(
        seed in any::<u64>(),
        k in 2usize..=3,
        size in 1usize..=3,
        p in 0.0f64..=1.0,
    ) {
        let src = random_mcc(seed, k, size, p);
        let padded = normalize_mcc(&src).unwrap();
        let before = solve_mcc_bruteforce(&src).unwrap().is_some();
        let after = solve_mcc_bruteforce(&padded).unwrap().is_some();
        prop_assert_eq!(before, after);
        let target = padded.classes().iter().map(Vec::len).max().unwrap();
        prop_assert!(padded.classes().iter().all(|c| c.len() == target));
    }
}
