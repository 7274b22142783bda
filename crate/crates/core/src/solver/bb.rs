//! Branch-and-bound on the lowest-index uncovered point.

use std::time::Instant;

use super::types::{
    Algorithm, Clustering, MsrInstance, SolveError, SolveLimits, SolveReport, Ticker, Variant,
};
use super::{candidate_radii_for, cheapest_cover_costs, CandidateRadii};
use crate::metric::MetricSpace;

/// Exact solve by branch-and-bound. No size cap: state is a bitset over
/// points, so only the search tree limits it. Branches assign a ball to
/// the lowest-index uncovered point; every optimal clustering restricts
/// to candidate radii, so the branching is complete.
pub fn solve_branch_bound(
    inst: &MsrInstance,
    limits: &SolveLimits,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let n = inst.n();
    let m = inst.metric();
    let cand = candidate_radii_for(inst);
    let exact = matches!(inst.variant(), Variant::ExactNonZero);
    let k_eff = if exact {
        inst.k()
    } else {
        // Distinct centers after duplicate merging; extra clusters beyond
        // the pool can never help.
        inst.k().min(cand.centers.len())
    };

    let lb0 = cheapest_cover_costs(m, &cand);
    if let Some(delta) = inst.delta() {
        if lb0.iter().any(|&c| c > delta) {
            return Err(SolveError::Infeasible);
        }
    }

    // Prefix sums of sorted floors: pad_lb[j] bounds the cost of any j
    // additional clusters from below (each cluster pays at least a floor).
    let mut sorted_floors = cand.floors.clone();
    sorted_floors.sort_unstable();
    let mut pad_lb = Vec::with_capacity(sorted_floors.len() + 1);
    let mut acc = 0u64;
    pad_lb.push(0);
    for f in sorted_floors {
        acc += f;
        pad_lb.push(acc);
    }

    let words = n.div_ceil(64);
    let mut search = Search {
        m,
        cand: &cand,
        exact,
        k_eff,
        delta: inst.delta(),
        lb0,
        pad_lb,
        n,
        best: None,
        nodes: 0,
        ticker: Ticker::new(limits),
    };

    if let Some((cost, pairs)) = greedy_incumbent(m, &cand, exact, k_eff) {
        if inst.delta().is_none_or(|d| cost <= d) {
            search.best = Some((cost, pairs));
        }
    }

    let mut covered = vec![0u64; words];
    let mut used = vec![false; cand.centers.len()];
    let mut chosen = Vec::with_capacity(k_eff);
    search.descend(&mut covered, &mut used, &mut chosen, 0, 0)?;

    let Some((optimal_cost, pairs)) = search.best else {
        return Err(SolveError::Infeasible);
    };
    let clustering = Clustering::new(pairs);
    debug_assert_eq!(clustering.cost(), optimal_cost);
    Ok(SolveReport {
        optimal_cost,
        clustering,
        algorithm: Algorithm::BranchBound,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    })
}

/// A feasible clustering to seed the incumbent: the best single
/// eccentricity ball, padded with cheapest floors for the exact variant.
/// Returns pairs unsorted; cost is their sum.
fn greedy_incumbent(
    m: &MetricSpace,
    cand: &CandidateRadii,
    exact: bool,
    k_eff: usize,
) -> Option<(u64, Vec<(usize, u64)>)> {
    let (best_i, &best_c) = cand
        .centers
        .iter()
        .enumerate()
        .min_by_key(|&(_, &c)| (m.eccentricity(c), c))?;
    let ecc = m.eccentricity(best_c);
    let mut pairs = vec![(best_c, ecc)];
    let mut cost = ecc;
    if exact {
        let mut rest: Vec<(u64, usize)> = cand
            .centers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != best_i)
            .map(|(i, &c)| (cand.floors[i], c))
            .collect();
        rest.sort_unstable();
        for &(f, c) in rest.iter().take(k_eff - 1) {
            pairs.push((c, f));
            cost += f;
        }
    }
    Some((cost, pairs))
}

struct Search<'a> {
    m: &'a MetricSpace,
    cand: &'a CandidateRadii,
    exact: bool,
    k_eff: usize,
    delta: Option<u64>,
    lb0: Vec<u64>,
    pad_lb: Vec<u64>,
    n: usize,
    best: Option<(u64, Vec<(usize, u64)>)>,
    nodes: u64,
    ticker: Ticker,
}

impl Search<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        for (wi, &w) in covered.iter().enumerate() {
            let bits = 64.min(self.n - wi * 64);
            let inv = !w & if bits == 64 { u64::MAX } else { (1 << bits) - 1 };
            if inv != 0 {
                return Some(wi * 64 + inv.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Largest single-ball cost forced by any uncovered point.
    fn cover_lb(&self, covered: &[u64]) -> u64 {
        let mut lb = 0;
        for p in 0..self.n {
            if covered[p / 64] & (1 << (p % 64)) == 0 && self.lb0[p] > lb {
                lb = self.lb0[p];
            }
        }
        lb
    }

    fn offer(&mut self, cost: u64, pairs: Vec<(usize, u64)>) {
        if self.delta.is_some_and(|d| cost > d) {
            return;
        }
        if self.best.as_ref().is_none_or(|(bc, _)| cost < *bc) {
            self.best = Some((cost, pairs));
        }
    }

    fn descend(
        &mut self,
        covered: &mut Vec<u64>,
        used: &mut Vec<bool>,
        chosen: &mut Vec<(usize, u64)>,
        cost: u64,
        t: usize,
    ) -> Result<(), SolveError> {
        self.ticker.tick()?;
        self.nodes += 1;

        let Some(p) = self.first_uncovered(covered) else {
            if !self.exact || t == self.k_eff {
                self.offer(cost, chosen.clone());
            } else {
                // Exact variant must emit k clusters: pad with the
                // cheapest unused floors. Floor balls always hold the
                // center and its nearest other point.
                let mut rest: Vec<(u64, usize)> = (0..self.cand.centers.len())
                    .filter(|&i| !used[i])
                    .map(|i| (self.cand.floors[i], self.cand.centers[i]))
                    .collect();
                rest.sort_unstable();
                let need = self.k_eff - t;
                debug_assert!(rest.len() >= need);
                let mut pairs = chosen.clone();
                let mut total = cost;
                for &(f, c) in rest.iter().take(need) {
                    pairs.push((c, f));
                    total += f;
                }
                self.offer(total, pairs);
            }
            return Ok(());
        };

        if t == self.k_eff {
            return Ok(());
        }

        // Children: every unused center with every candidate radius large
        // enough to reach p, cheapest first.
        let mut children: Vec<(u64, usize, usize)> = Vec::new();
        for ci in 0..self.cand.centers.len() {
            if used[ci] {
                continue;
            }
            let c = self.cand.centers[ci];
            let need = self.m.dist(c, p).max(self.cand.floors[ci]);
            let radii = &self.cand.radii[ci];
            let from = radii.partition_point(|&r| r < need);
            for &r in &radii[from..] {
                children.push((r, c, ci));
            }
        }
        children.sort_unstable();

        for (r, c, ci) in children {
            let ncost = cost + r;
            let future = self.k_eff - t - 1;
            let pad = if self.exact { self.pad_lb[future] } else { 0 };
            if self.delta.is_some_and(|d| ncost + pad > d) {
                continue;
            }
            if self
                .best
                .as_ref()
                .is_some_and(|(bc, _)| ncost + pad >= *bc)
            {
                continue;
            }

            let saved = covered.clone();
            for q in 0..self.n {
                if self.m.dist(c, q) <= r {
                    covered[q / 64] |= 1 << (q % 64);
                }
            }
            let lb_cov = self.cover_lb(covered);
            let lb_total = ncost + lb_cov.max(pad);
            let cut = self.delta.is_some_and(|d| lb_total > d)
                || self
                    .best
                    .as_ref()
                    .is_some_and(|(bc, _)| lb_total >= *bc);
            if !cut {
                used[ci] = true;
                chosen.push((c, r));
                self.descend(covered, used, chosen, ncost, t + 1)?;
                chosen.pop();
                used[ci] = false;
            }
            *covered = saved;
        }
        Ok(())
    }
}
