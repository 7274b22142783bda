//! Engine selection and the budgeted decision question.

use super::bb::solve_branch_bound;
use super::dp::{solve_cover_dp, MAX_DP_POINTS};
use super::enumerate::solve_enumerate;
use super::types::{MsrInstance, SolveError, SolveLimits, SolveReport, Variant};

/// Center subsets the auto dispatcher is willing to hand to enumeration.
const ENUM_COMBO_BUDGET: u128 = 200_000;

fn combinations_within(pool: usize, sizes: impl Iterator<Item = usize>, cap: u128) -> bool {
    let mut total: u128 = 0;
    for size in sizes {
        let mut c: u128 = 1;
        for j in 0..size {
            c = c.saturating_mul((pool - j) as u128) / (j as u128 + 1);
            if c > cap {
                return false;
            }
        }
        total = total.saturating_add(c);
        if total > cap {
            return false;
        }
    }
    true
}

/// Picks an engine from instance shape: the mask DP when the point count
/// permits, enumeration when a restricted center pool keeps the subset
/// count small, branch-and-bound otherwise.
pub fn solve_auto(inst: &MsrInstance, limits: &SolveLimits) -> Result<SolveReport, SolveError> {
    if inst.n() <= MAX_DP_POINTS {
        match solve_cover_dp(inst, limits) {
            Err(SolveError::SizeCap { .. }) => {}
            other => return other,
        }
    }
    if let Variant::AllowedCenters(pool) = inst.variant() {
        let top = inst.k().min(pool.len());
        if combinations_within(pool.len(), 1..=top, ENUM_COMBO_BUDGET) {
            return solve_enumerate(inst, limits);
        }
    }
    solve_branch_bound(inst, limits)
}

/// Answers whether a clustering of cost at most the instance's budget
/// exists. The instance must carry a budget.
pub fn decide(inst: &MsrInstance, limits: &SolveLimits) -> Result<bool, SolveError> {
    if inst.delta().is_none() {
        return Err(SolveError::MissingBudget);
    }
    match solve_auto(inst, limits) {
        Ok(_) => Ok(true),
        Err(SolveError::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}
