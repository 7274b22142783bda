//! Exhaustive center-set enumeration.

use std::time::Instant;

use super::types::{
    Algorithm, Clustering, MsrInstance, SolveError, SolveLimits, SolveReport, Ticker, Variant,
};
use crate::metric::MetricSpace;
use crate::util::next_combination;

/// Cheapest radius assignment for a fixed center list, together with its
/// cost. Radii are the lexicographically smallest vector among all
/// minimum-cost assignments. `nonzero` forces every ball to hold at least
/// two points (radius at least the center's nearest-other distance).
/// Returns `Ok(None)` when no assignment fits within `budget`.
///
/// Centers must be distinct and in range.
pub fn optimal_radii_for_centers(
    m: &MetricSpace,
    centers: &[usize],
    budget: Option<u64>,
    nonzero: bool,
    limits: &SolveLimits,
) -> Result<Option<(Vec<u64>, u64)>, SolveError> {
    let mut nodes = 0u64;
    let mut ticker = Ticker::new(limits);
    radii_search(m, centers, budget, nonzero, &mut ticker, &mut nodes)
}

fn radii_search(
    m: &MetricSpace,
    centers: &[usize],
    budget: Option<u64>,
    nonzero: bool,
    ticker: &mut Ticker,
    nodes: &mut u64,
) -> Result<Option<(Vec<u64>, u64)>, SolveError> {
    let k = centers.len();
    if k == 0 {
        return Ok(None);
    }
    debug_assert!(centers.windows(2).all(|w| w[0] < w[1]));
    let n = m.n();

    let mut floors = vec![0u64; k];
    if nonzero {
        for (i, &c) in centers.iter().enumerate() {
            match m.nearest_other(c) {
                Some(f) => floors[i] = f,
                None => return Ok(None),
            }
        }
    }
    let base_cost: u64 = floors.iter().sum();
    if budget.is_some_and(|b| base_cost > b) {
        return Ok(None);
    }

    // Demand vectors of points not already covered by the floors, reduced
    // to the Pareto-maximal ones: covering a dominating point covers every
    // point it dominates, at every radius assignment.
    let mut demands: Vec<Vec<u64>> = Vec::new();
    for p in 0..n {
        let dvec: Vec<u64> = centers.iter().map(|&c| m.dist(c, p)).collect();
        if dvec.iter().zip(&floors).any(|(&d, &f)| d <= f) {
            continue;
        }
        demands.push(dvec);
    }
    demands.sort_unstable();
    demands.dedup();
    let kept: Vec<Vec<u64>> = demands
        .iter()
        .filter(|dv| {
            !demands
                .iter()
                .any(|other| *other != **dv && dv.iter().zip(other).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();

    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut radii = floors;
    raise(&kept, budget, &mut radii, base_cost, &mut best, ticker, nodes)?;
    Ok(best.map(|(cost, radii)| (radii, cost)))
}

/// Depth-first search over radius vectors: find the uncovered demand with
/// the largest cheapest-increment, then try raising each coordinate to
/// exactly its demand. Every pointwise-minimal covering vector is
/// reachable, so the minimum cost and its lex-smallest vector are exact.
fn raise(
    demands: &[Vec<u64>],
    budget: Option<u64>,
    radii: &mut Vec<u64>,
    cost: u64,
    best: &mut Option<(u64, Vec<u64>)>,
    ticker: &mut Ticker,
    nodes: &mut u64,
) -> Result<(), SolveError> {
    ticker.tick()?;
    *nodes += 1;

    let mut hardest: Option<(u64, &Vec<u64>)> = None;
    for dv in demands {
        let mut need = u64::MAX;
        for (i, &d) in dv.iter().enumerate() {
            let inc = d.saturating_sub(radii[i]);
            if inc < need {
                need = inc;
            }
        }
        if need > 0 && hardest.as_ref().is_none_or(|&(h, _)| need > h) {
            hardest = Some((need, dv));
        }
    }

    let Some((need, dv)) = hardest else {
        let better = match best {
            None => true,
            Some((bc, br)) => cost < *bc || (cost == *bc && *radii < *br),
        };
        if better {
            *best = Some((cost, radii.clone()));
        }
        return Ok(());
    };

    // Equal-cost extensions stay alive so lex ties resolve exactly.
    let reach = cost + need;
    if budget.is_some_and(|b| reach > b) {
        return Ok(());
    }
    if best.as_ref().is_some_and(|(bc, _)| reach > *bc) {
        return Ok(());
    }

    let dv = dv.clone();
    for i in 0..radii.len() {
        if dv[i] > radii[i] {
            let old = radii[i];
            let ncost = cost + (dv[i] - old);
            let over_budget = budget.is_some_and(|b| ncost > b)
                || best.as_ref().is_some_and(|(bc, _)| ncost > *bc);
            if !over_budget {
                radii[i] = dv[i];
                raise(demands, budget, radii, ncost, best, ticker, nodes)?;
                radii[i] = old;
            }
        }
    }
    Ok(())
}

/// Exact solve by enumerating center sets in lexicographic order and
/// assigning radii optimally per set. Returns the lexicographically
/// smallest optimal clustering, comparing sorted (center, radius) pair
/// sequences. Cost grows with the number of center subsets, so callers
/// should keep the pool or `k` small.
pub fn solve_enumerate(
    inst: &MsrInstance,
    limits: &SolveLimits,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut ticker = Ticker::new(limits);
    let m = inst.metric();
    let pool = inst.eligible_centers();
    let exact = matches!(inst.variant(), Variant::ExactNonZero);
    let k = inst.k();
    let sizes: Vec<usize> = if exact {
        vec![k]
    } else {
        (1..=k.min(pool.len())).collect()
    };

    let mut nodes = 0u64;
    let mut best: Option<(u64, Vec<(usize, u64)>)> = None;
    for size in sizes {
        if size > pool.len() {
            break;
        }
        let mut picks: Vec<usize> = (0..size).collect();
        loop {
            let centers: Vec<usize> = picks.iter().map(|&i| pool[i]).collect();
            let budget = match (inst.delta(), best.as_ref()) {
                (Some(d), Some((bc, _))) => Some(d.min(*bc)),
                (Some(d), None) => Some(d),
                (None, Some((bc, _))) => Some(*bc),
                (None, None) => None,
            };
            if let Some((radii, cost)) =
                radii_search(m, &centers, budget, exact, &mut ticker, &mut nodes)?
            {
                let pairs: Vec<(usize, u64)> = centers.into_iter().zip(radii).collect();
                let better = match &best {
                    None => true,
                    Some((bc, bp)) => cost < *bc || (cost == *bc && pairs < *bp),
                };
                if better {
                    best = Some((cost, pairs));
                }
            }
            if !next_combination(&mut picks, pool.len()) {
                break;
            }
        }
    }

    let Some((optimal_cost, pairs)) = best else {
        return Err(SolveError::Infeasible);
    };
    let clustering = Clustering::new(pairs);
    debug_assert_eq!(clustering.cost(), optimal_cost);
    Ok(SolveReport {
        optimal_cost,
        clustering,
        algorithm: Algorithm::Enumerate,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::metric::shortest_path_metric;
    use crate::solver::{solve_cover_dp, verify_clustering};

    fn path_metric(n: usize) -> MetricSpace {
        let edges: Vec<(usize, usize, u64)> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
        shortest_path_metric(&build_graph(n, &edges).unwrap()).unwrap()
    }

    fn cycle_metric(n: usize) -> MetricSpace {
        let mut edges: Vec<(usize, usize, u64)> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
        edges.push((0, n - 1, 1));
        shortest_path_metric(&build_graph(n, &edges).unwrap()).unwrap()
    }

    #[test]
    fn radii_for_fixed_path_centers() {
        let m = path_metric(4);
        let limits = SolveLimits::default();
        let (radii, cost) = optimal_radii_for_centers(&m, &[1, 2], None, false, &limits)
            .unwrap()
            .unwrap();
        assert_eq!(cost, 2);
        // Lex-smallest among the cost-2 assignments: center 1 shrinks to
        // zero and center 2 stretches over the whole path.
        assert_eq!(radii, vec![0, 2]);
    }

    #[test]
    fn radii_budget_infeasible() {
        let m = path_metric(4);
        let limits = SolveLimits::default();
        assert_eq!(
            optimal_radii_for_centers(&m, &[0], Some(2), false, &limits).unwrap(),
            None
        );
        let (radii, cost) = optimal_radii_for_centers(&m, &[0], Some(3), false, &limits)
            .unwrap()
            .unwrap();
        assert_eq!((radii, cost), (vec![3], 3));
    }

    #[test]
    fn radii_nonzero_floor_applies() {
        let m = path_metric(4);
        let limits = SolveLimits::default();
        let (radii, cost) = optimal_radii_for_centers(&m, &[0, 3], None, true, &limits)
            .unwrap()
            .unwrap();
        assert_eq!(cost, 2);
        assert_eq!(radii, vec![1, 1]);
    }

    #[test]
    fn lexicographic_tie_break_on_cycle() {
        let inst = MsrInstance::new(cycle_metric(4), 2, None, Variant::Standard).unwrap();
        let rep = solve_enumerate(&inst, &SolveLimits::default()).unwrap();
        assert_eq!(rep.optimal_cost, 1);
        assert_eq!(rep.clustering.pairs(), &[(0, 0), (2, 1)]);
    }

    #[test]
    fn exact_variant_pairs() {
        let inst = MsrInstance::new(cycle_metric(4), 2, None, Variant::ExactNonZero).unwrap();
        let rep = solve_enumerate(&inst, &SolveLimits::default()).unwrap();
        assert_eq!(rep.optimal_cost, 2);
        assert_eq!(rep.clustering.pairs(), &[(0, 1), (1, 1)]);
    }

    #[test]
    fn agrees_with_dp() {
        let limits = SolveLimits::default();
        for (m, k) in [
            (path_metric(6), 2),
            (path_metric(7), 3),
            (cycle_metric(5), 2),
            (cycle_metric(7), 3),
        ] {
            let inst = MsrInstance::new(m, k, None, Variant::Standard).unwrap();
            let dp = solve_cover_dp(&inst, &limits).unwrap();
            let en = solve_enumerate(&inst, &limits).unwrap();
            assert_eq!(dp.optimal_cost, en.optimal_cost);
            assert!(verify_clustering(&inst, &en.clustering).is_valid());
        }
    }

    #[test]
    fn allowed_pool_respected() {
        let inst =
            MsrInstance::new(path_metric(6), 3, None, Variant::AllowedCenters(vec![1, 4])).unwrap();
        let rep = solve_enumerate(&inst, &SolveLimits::default()).unwrap();
        assert_eq!(rep.optimal_cost, 2);
        assert_eq!(rep.clustering.pairs(), &[(1, 1), (4, 1)]);
    }

    #[test]
    fn infeasible_budget() {
        let inst = MsrInstance::new(path_metric(6), 1, Some(1), Variant::Standard).unwrap();
        assert_eq!(
            solve_enumerate(&inst, &SolveLimits::default()),
            Err(SolveError::Infeasible)
        );
    }
}
