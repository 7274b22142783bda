//! Dynamic programming over covered-point bitmasks.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use super::candidate_radii_for;
use super::types::{
    Algorithm, Clustering, MsrInstance, SolveError, SolveLimits, SolveReport, Ticker, Variant,
};

/// Largest point count the mask DP accepts.
pub const MAX_DP_POINTS: usize = 22;

/// Cap on total `(layer, mask)` table entries for the cover DP.
const MAX_DP_STATES: usize = 1 << 24;

/// Cap on stored decision nodes for the exact-variant scan.
const MAX_EXACT_STATES: usize = 1 << 22;

/// Exact solve by dynamic programming. Standard and allowed-centers
/// instances run a layered set-cover DP keyed by (clusters used, covered
/// mask); the exact variant scans centers in index order so each is used
/// at most once, which duplicate-collapsing DP states cannot express.
pub fn solve_cover_dp(inst: &MsrInstance, limits: &SolveLimits) -> Result<SolveReport, SolveError> {
    let n = inst.n();
    if n > MAX_DP_POINTS {
        return Err(SolveError::SizeCap {
            what: "dp points",
            size: n,
            cap: MAX_DP_POINTS,
        });
    }
    match inst.variant() {
        Variant::ExactNonZero => solve_exact_scan(inst, limits),
        _ => solve_cover_layers(inst, limits),
    }
}

struct Ball {
    center: usize,
    radius: u64,
    mask: u32,
}

fn solve_cover_layers(
    inst: &MsrInstance,
    limits: &SolveLimits,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut ticker = Ticker::new(limits);
    let n = inst.n();
    let m = inst.metric();
    let cand = candidate_radii_for(inst);

    // Distinct-mask balls, keeping the cheapest (radius, center) per mask:
    // collapsing duplicate centers never raises cost, so an optimum over
    // distinct balls is a global optimum.
    let mut by_mask: HashMap<u32, (u64, usize)> = HashMap::new();
    for (i, &c) in cand.centers.iter().enumerate() {
        for &r in &cand.radii[i] {
            let mut mask = 0u32;
            for p in 0..n {
                if m.dist(c, p) <= r {
                    mask |= 1 << p;
                }
            }
            let entry = by_mask.entry(mask).or_insert((r, c));
            if (r, c) < *entry {
                *entry = (r, c);
            }
        }
    }
    let mut balls: Vec<Ball> = by_mask
        .into_iter()
        .map(|(mask, (radius, center))| Ball {
            center,
            radius,
            mask,
        })
        .collect();
    balls.sort_unstable_by_key(|b| (b.radius, b.center));

    let mut balls_by_point: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (bi, b) in balls.iter().enumerate() {
        for p in 0..n {
            if b.mask & (1 << p) != 0 {
                balls_by_point[p].push(bi);
            }
        }
    }

    let k_eff = inst.k().min(cand.centers.len());
    let states = 1usize << n;
    let total = (k_eff + 1) * states;
    if total > MAX_DP_STATES {
        return Err(SolveError::SizeCap {
            what: "dp states",
            size: total,
            cap: MAX_DP_STATES,
        });
    }

    const INF: u64 = u64::MAX;
    const NO_PARENT: (u32, u16) = (u32::MAX, u16::MAX);
    let mut cost = vec![INF; total];
    let mut parent = vec![NO_PARENT; total];
    cost[0] = 0;
    let full = (states - 1) as u32;
    let mut nodes = 0u64;

    for t in 0..k_eff {
        let layer = t * states;
        let next = layer + states;
        for s in 0..states {
            let c = cost[layer + s];
            if c == INF || s as u32 == full {
                continue;
            }
            let p = (!(s as u32)).trailing_zeros() as usize;
            for &bi in &balls_by_point[p] {
                ticker.tick()?;
                nodes += 1;
                let b = &balls[bi];
                let nc = c + b.radius;
                if inst.delta().is_some_and(|d| nc > d) {
                    continue;
                }
                let ns = (s as u32 | b.mask) as usize;
                if nc < cost[next + ns] {
                    cost[next + ns] = nc;
                    parent[next + ns] = (s as u32, bi as u16);
                }
            }
        }
    }

    let mut best: Option<(u64, usize)> = None;
    for t in 1..=k_eff {
        let c = cost[t * states + full as usize];
        if c != INF && best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, t));
        }
    }
    let Some((best_cost, best_t)) = best else {
        return Err(SolveError::Infeasible);
    };

    let mut pairs = Vec::with_capacity(best_t);
    let mut t = best_t;
    let mut s = full;
    while t > 0 {
        let (ps, bi) = parent[t * states + s as usize];
        let b = &balls[bi as usize];
        pairs.push((b.center, b.radius));
        s = ps;
        t -= 1;
    }
    let clustering = Clustering::new(pairs);
    debug_assert_eq!(clustering.cost(), best_cost);

    Ok(SolveReport {
        optimal_cost: best_cost,
        clustering,
        algorithm: Algorithm::CoverDp,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

struct ScanNode {
    parent: u32,
    center: usize,
    radius: u64,
}

const ROOT: u32 = u32::MAX;

fn solve_exact_scan(inst: &MsrInstance, limits: &SolveLimits) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut ticker = Ticker::new(limits);
    let n = inst.n();
    let k = inst.k();
    let m = inst.metric();
    let cand = candidate_radii_for(inst);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    // Ball masks per center, parallel to its candidate radii.
    let masks: Vec<Vec<u32>> = cand
        .centers
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            cand.radii[i]
                .iter()
                .map(|&r| {
                    let mut mask = 0u32;
                    for p in 0..n {
                        if m.dist(c, p) <= r {
                            mask |= 1 << p;
                        }
                    }
                    mask
                })
                .collect()
        })
        .collect();

    // Cheapest way to finish j more clusters from centers with index > c:
    // prefix sums of the sorted floor suffix. Valid lower bound because
    // every cluster radius is at least its center's floor.
    let mut pad: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for c in 0..=n {
        let mut floors: Vec<u64> = (c..n).map(|i| cand.floors[i]).collect();
        floors.sort_unstable();
        let mut sums = Vec::with_capacity(floors.len() + 1);
        let mut acc = 0u64;
        sums.push(0);
        for f in floors {
            acc += f;
            sums.push(acc);
        }
        pad[c] = sums;
    }

    let mut arena: Vec<ScanNode> = Vec::new();
    // (clusters chosen, covered mask) -> (cost, decision-chain tail).
    let mut frontier: BTreeMap<(usize, u32), (u64, u32)> = BTreeMap::new();
    frontier.insert((0, 0), (0, ROOT));
    let mut nodes = 0u64;

    for c in 0..n {
        let remaining_after = n - c - 1;
        let mut next: BTreeMap<(usize, u32), (u64, u32)> = BTreeMap::new();
        for (&(t, mask), &(cost, tail)) in &frontier {
            let needed = k - t;
            // Skip center c when enough centers remain to finish.
            if needed <= remaining_after
                && !inst
                    .delta()
                    .is_some_and(|d| cost.saturating_add(pad[c + 1][needed]) > d)
            {
                ticker.tick()?;
                nodes += 1;
                let entry = next.entry((t, mask)).or_insert((u64::MAX, ROOT));
                if cost < entry.0 {
                    *entry = (cost, tail);
                }
            }
            if needed == 0 {
                continue;
            }
            for (ri, &r) in cand.radii[c].iter().enumerate() {
                ticker.tick()?;
                nodes += 1;
                let ncost = cost + r;
                if inst
                    .delta()
                    .is_some_and(|d| ncost.saturating_add(pad[c + 1][needed - 1]) > d)
                {
                    // Radii ascend, so every later one fails too.
                    break;
                }
                let nmask = mask | masks[c][ri];
                let entry = next.entry((t + 1, nmask)).or_insert((u64::MAX, ROOT));
                if ncost < entry.0 {
                    if arena.len() >= MAX_EXACT_STATES {
                        return Err(SolveError::SizeCap {
                            what: "exact dp nodes",
                            size: arena.len() + 1,
                            cap: MAX_EXACT_STATES,
                        });
                    }
                    arena.push(ScanNode {
                        parent: tail,
                        center: cand.centers[c],
                        radius: r,
                    });
                    *entry = (ncost, (arena.len() - 1) as u32);
                }
            }
        }
        frontier = next;
    }

    let Some(&(best_cost, tail)) = frontier.get(&(k, full)) else {
        return Err(SolveError::Infeasible);
    };
    let mut pairs = Vec::with_capacity(k);
    let mut cur = tail;
    while cur != ROOT {
        let node = &arena[cur as usize];
        pairs.push((node.center, node.radius));
        cur = node.parent;
    }
    let clustering = Clustering::new(pairs);
    debug_assert_eq!(clustering.len(), k);
    debug_assert_eq!(clustering.cost(), best_cost);

    Ok(SolveReport {
        optimal_cost: best_cost,
        clustering,
        algorithm: Algorithm::CoverDp,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}
