//! Exact solvers for min-sum-radii clustering on finite metrics.
//!
//! Three interchangeable engines, all bit-exact on `u64` distances:
//!
//! * [`solve_cover_dp`]: dynamic programming over covered-point bitmasks;
//!   the workhorse up to [`MAX_DP_POINTS`] points.
//! * [`solve_branch_bound`]: branch-and-bound on the lowest-index uncovered
//!   point; no size cap.
//! * [`solve_enumerate`]: exhaustive center-set enumeration with an exact
//!   radius-assignment subroutine; returns the lexicographically smallest
//!   optimal clustering, and pays for it, so keep the center pool small.
//!
//! [`solve_auto`] picks an engine from instance shape, and [`decide`]
//! answers the budgeted yes/no question.

mod auto;
mod bb;
mod dp;
mod enumerate;
mod types;

pub use auto::{decide, solve_auto};
pub use bb::solve_branch_bound;
pub use dp::{solve_cover_dp, MAX_DP_POINTS};
pub use enumerate::{optimal_radii_for_centers, solve_enumerate};
pub use types::{
    Algorithm, Clustering, InstanceError, InvalidReason, MsrInstance, SolveError, SolveLimits,
    SolveReport, Variant, Verdict,
};


use crate::metric::MetricSpace;

/// Checks a clustering against an instance. Checks run in order: pair
/// count, center eligibility, minimum ball size (exact variant), coverage
/// by lowest-index point, then budget.
pub fn verify_clustering(inst: &MsrInstance, clustering: &Clustering) -> Verdict {
    let n = inst.n();
    let k = inst.k();
    let pairs = clustering.pairs();

    match inst.variant() {
        Variant::ExactNonZero => {
            if pairs.len() != k {
                return Verdict::Invalid(InvalidReason::PairCountNotK {
                    pairs: pairs.len(),
                    k,
                });
            }
        }
        _ => {
            if pairs.is_empty() {
                return Verdict::Invalid(InvalidReason::NoPairs);
            }
            if pairs.len() > k {
                return Verdict::Invalid(InvalidReason::TooManyPairs {
                    pairs: pairs.len(),
                    k,
                });
            }
        }
    }

    for &(c, _) in pairs {
        if c >= n {
            return Verdict::Invalid(InvalidReason::CenterOutOfRange { center: c, n });
        }
    }
    if let Variant::AllowedCenters(allowed) = inst.variant() {
        for &(c, _) in pairs {
            if allowed.binary_search(&c).is_err() {
                return Verdict::Invalid(InvalidReason::CenterNotAllowed { center: c });
            }
        }
    }

    let m = inst.metric();
    if matches!(inst.variant(), Variant::ExactNonZero) {
        for &(c, r) in pairs {
            let ball = m.ball_size(c, r);
            if ball < 2 {
                return Verdict::Invalid(InvalidReason::UndersizedBall {
                    center: c,
                    radius: r,
                    ball,
                });
            }
        }
    }

    let mut covered = vec![false; n];
    for &(c, r) in pairs {
        for p in 0..n {
            if m.dist(c, p) <= r {
                covered[p] = true;
            }
        }
    }
    if let Some(p) = covered.iter().position(|&c| !c) {
        return Verdict::Invalid(InvalidReason::PointUncovered { point: p });
    }

    let cost = clustering.cost();
    if let Some(delta) = inst.delta() {
        if cost > delta {
            return Verdict::Invalid(InvalidReason::BudgetExceeded { cost, delta });
        }
    }
    Verdict::Valid { cost }
}

/// Candidate center pool with, per center, the sorted radii a solution may
/// assign it: distinct distances from the center, within the budget, and
/// (exact variant) at least the distance to its nearest other point.
pub(crate) struct CandidateRadii {
    pub centers: Vec<usize>,
    pub radii: Vec<Vec<u64>>,
    /// Smallest usable radius per center; 0 outside the exact variant.
    pub floors: Vec<u64>,
}

pub(crate) fn candidate_radii_for(inst: &MsrInstance) -> CandidateRadii {
    let m = inst.metric();
    let centers = inst.eligible_centers();
    let exact = matches!(inst.variant(), Variant::ExactNonZero);
    let mut radii = Vec::with_capacity(centers.len());
    let mut floors = Vec::with_capacity(centers.len());
    for &c in &centers {
        let mut cand = m.candidate_radii(c, inst.delta());
        let floor = if exact {
            // n >= 2 is an instance invariant for the exact variant.
            let f = m.nearest_other(c).expect("exact instance has n >= 2");
            cand.retain(|&r| r >= f);
            f
        } else {
            0
        };
        radii.push(cand);
        floors.push(floor);
    }
    CandidateRadii {
        centers,
        radii,
        floors,
    }
}

/// Smallest cost at which any single eligible pair can cover each point:
/// `min` over centers `c` of `max(floor(c), d(c, p))`. A per-point lower
/// bound on the radius spent covering it.
pub(crate) fn cheapest_cover_costs(m: &MetricSpace, cand: &CandidateRadii) -> Vec<u64> {
    let n = m.n();
    let mut out = vec![u64::MAX; n];
    for (i, &c) in cand.centers.iter().enumerate() {
        let floor = cand.floors[i];
        for p in 0..n {
            let need = m.dist(c, p).max(floor);
            if need < out[p] {
                out[p] = need;
            }
        }
    }
    out
}
