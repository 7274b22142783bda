//! Problem instances, clusterings, verdicts, and solver plumbing types.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::metric::MetricSpace;

/// Which clustering problem an instance poses.
///
/// * `Standard`: up to `k` clusters, any centers, radius 0 allowed.
/// * `ExactNonZero`: exactly `k` clusters with pairwise distinct centers,
///   and every cluster's ball must hold at least two points.
/// * `AllowedCenters`: up to `k` clusters, centers restricted to a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    Standard,
    ExactNonZero,
    AllowedCenters(Vec<usize>),
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::ExactNonZero => "exact",
            Variant::AllowedCenters(_) => "allowed",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("k must be at least 1")]
    KZero,
    #[error("exact variant needs at least 2 points")]
    ExactTooFewPoints,
    #[error("exact variant needs k <= n (k = {k}, n = {n}); centers are pairwise distinct")]
    ExactKTooLarge { k: usize, n: usize },
    #[error("allowed-centers variant needs a nonempty center set")]
    EmptyAllowed,
    #[error("allowed center {center} out of range (n = {n})")]
    AllowedOutOfRange { center: usize, n: usize },
    #[error("k * max distance would overflow the cost type")]
    CostOverflow,
}

/// A min-sum-radii instance: a finite metric, a cluster budget `k`, an
/// optional cost budget `delta`, and a variant.
///
/// With `delta` present, solvers answer the budgeted question: they
/// restrict candidate radii to values at most `delta`, never extend a
/// partial solution beyond it, and report infeasibility when no clustering
/// of cost at most `delta` exists. With `delta` absent they optimize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsrInstance {
    metric: MetricSpace,
    k: usize,
    delta: Option<u64>,
    variant: Variant,
}

impl MsrInstance {
    pub fn new(
        metric: MetricSpace,
        k: usize,
        delta: Option<u64>,
        variant: Variant,
    ) -> Result<Self, InstanceError> {
        if k == 0 {
            return Err(InstanceError::KZero);
        }
        let n = metric.n();
        let variant = match variant {
            Variant::ExactNonZero => {
                if n < 2 {
                    return Err(InstanceError::ExactTooFewPoints);
                }
                if k > n {
                    return Err(InstanceError::ExactKTooLarge { k, n });
                }
                Variant::ExactNonZero
            }
            Variant::AllowedCenters(mut a) => {
                if a.is_empty() {
                    return Err(InstanceError::EmptyAllowed);
                }
                a.sort_unstable();
                a.dedup();
                if let Some(&c) = a.iter().find(|&&c| c >= n) {
                    return Err(InstanceError::AllowedOutOfRange { center: c, n });
                }
                Variant::AllowedCenters(a)
            }
            Variant::Standard => Variant::Standard,
        };
        // Any clustering sums at most k radii, each bounded by the metric's
        // largest entry; insisting the product fits keeps all cost
        // arithmetic downstream inside u64.
        let max_d = (0..n).map(|v| metric.eccentricity(v)).max().unwrap_or(0);
        if (k as u128) * (max_d as u128) > u64::MAX as u128 {
            return Err(InstanceError::CostOverflow);
        }
        Ok(MsrInstance {
            metric,
            k,
            delta,
            variant,
        })
    }

    pub fn metric(&self) -> &MetricSpace {
        &self.metric
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> Option<u64> {
        self.delta
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    /// Same instance with a different budget.
    pub fn with_delta(&self, delta: Option<u64>) -> MsrInstance {
        MsrInstance {
            metric: self.metric.clone(),
            k: self.k,
            delta,
            variant: self.variant.clone(),
        }
    }

    /// Centers a solution may use, ascending.
    pub fn eligible_centers(&self) -> Vec<usize> {
        match &self.variant {
            Variant::AllowedCenters(a) => a.clone(),
            _ => (0..self.n()).collect(),
        }
    }
}

/// A set of center–radius pairs, sorted by center, centers pairwise
/// distinct. Construction merges duplicate centers by keeping the largest
/// radius, which never shrinks coverage and never raises cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    pairs: Vec<(usize, u64)>,
}

impl Clustering {
    pub fn new(mut pairs: Vec<(usize, u64)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup_by(|later, earlier| {
            if later.0 == earlier.0 {
                earlier.1 = earlier.1.max(later.1);
                true
            } else {
                false
            }
        });
        Clustering { pairs }
    }

    pub fn pairs(&self) -> &[(usize, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sum of radii; saturates at `u64::MAX` (instances constructed through
    /// [`MsrInstance::new`] can never reach saturation).
    pub fn cost(&self) -> u64 {
        self.pairs
            .iter()
            .fold(0u64, |acc, &(_, r)| acc.saturating_add(r))
    }
}

/// Why a clustering fails verification. Checks run in a fixed order and
/// report the first failure, so verdicts are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidReason {
    NoPairs,
    TooManyPairs { pairs: usize, k: usize },
    PairCountNotK { pairs: usize, k: usize },
    CenterOutOfRange { center: usize, n: usize },
    CenterNotAllowed { center: usize },
    UndersizedBall { center: usize, radius: u64, ball: usize },
    PointUncovered { point: usize },
    BudgetExceeded { cost: u64, delta: u64 },
}

impl std::fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvalidReason::NoPairs => write!(f, "no_pairs"),
            InvalidReason::TooManyPairs { pairs, k } => {
                write!(f, "too_many_pairs pairs={pairs} k={k}")
            }
            InvalidReason::PairCountNotK { pairs, k } => {
                write!(f, "pair_count_not_k pairs={pairs} k={k}")
            }
            InvalidReason::CenterOutOfRange { center, n } => {
                write!(f, "center_out_of_range center={center} n={n}")
            }
            InvalidReason::CenterNotAllowed { center } => {
                write!(f, "center_not_allowed center={center}")
            }
            InvalidReason::UndersizedBall { center, radius, ball } => {
                write!(f, "undersized_ball center={center} radius={radius} ball={ball}")
            }
            InvalidReason::PointUncovered { point } => write!(f, "point_uncovered point={point}"),
            InvalidReason::BudgetExceeded { cost, delta } => {
                write!(f, "budget_exceeded cost={cost} delta={delta}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid { cost: u64 },
    Invalid(InvalidReason),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    CoverDp,
    BranchBound,
    Enumerate,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::CoverDp => "dp",
            Algorithm::BranchBound => "bb",
            Algorithm::Enumerate => "enum",
        }
    }
}

/// A solved instance: optimal cost, one optimal clustering, and how the
/// search went. `verify_clustering` accepts the witness by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub optimal_cost: u64,
    pub clustering: Clustering,
    pub algorithm: Algorithm,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// No clustering satisfies the instance within its budget. Budgeted
    /// instances report this when `delta` is too small; unbudgeted
    /// instances on connected metrics are always feasible.
    #[error("no clustering satisfies the instance within its budget")]
    Infeasible,
    #[error("solve exceeded its deadline")]
    Timeout,
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("decide needs an instance with a budget")]
    MissingBudget,
}

/// Resource limits shared by all solvers. The default imposes none.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveLimits {
    pub deadline: Option<Instant>,
}

impl SolveLimits {
    pub fn with_timeout(timeout: Duration) -> Self {
        SolveLimits {
            deadline: Some(Instant::now() + timeout),
        }
    }
}

/// Cheap periodic deadline check for inner search loops.
pub(crate) struct Ticker {
    deadline: Option<Instant>,
    countdown: u32,
}

const TICK_EVERY: u32 = 4096;

impl Ticker {
    pub(crate) fn new(limits: &SolveLimits) -> Self {
        // First tick checks immediately so an already-expired deadline
        // surfaces before any real work.
        Ticker {
            deadline: limits.deadline,
            countdown: 1,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), SolveError> {
        self.countdown -= 1;
        if self.countdown == 0 {
            self.countdown = TICK_EVERY;
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(SolveError::Timeout);
                }
            }
        }
        Ok(())
    }
}
