//! Seeded generators, brute-force source oracles, and differential
//! fuzzing of the instance constructions against those oracles.
//!
//! Every generator is a pure function of its seed, using the fixed-
//! constant generator below, so any trial can be replayed from the
//! numbers in a report. Fuzz trials are independent and run in parallel;
//! aggregation sorts by seed, so reports do not depend on scheduling.

use std::fmt;
use std::time::Duration;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{build_graph, is_bipartite, WeightedGraph};
use crate::reductions::{
    augment_complete, augment_complete_bipartite, extract_clique_vertex_cover,
    extract_clique_weighted, normalize_mcc, reduce_ds_to_exact, reduce_mcc_allowed_fvs,
    reduce_mcc_allowed_kdelta, reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite,
    MccInstance, MsrProblem, ReductionArtifact, ReductionError, ReductionId,
};
use crate::solver::{decide, solve_auto, SolveError, SolveLimits, Variant};
use crate::util::next_combination;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("search too large: {what} = {size} exceeds cap {cap}")]
    SearchTooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("reduction {reduction} cannot be fuzzed from this source kind")]
    SourceKind { reduction: &'static str },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Deterministic xorshift-star generator: shifts 12/25/27, multiplier
/// 0x2545F4914F6CDD1D. Seed 0 is remapped to a fixed odd constant so the
/// state never sticks at zero. One stream per seed, identical on every
/// platform.
#[derive(Debug, Clone)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng {
            state: if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..bound` by rejection; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Bernoulli draw; `p` outside `[0, 1]` clamps.
    pub fn chance(&mut self, p: f64) -> bool {
        if p >= 1.0 {
            return true;
        }
        if p <= 0.0 {
            return false;
        }
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }
}

/// Random connected graph: a random recursive tree plus each remaining
/// pair independently with probability `edge_prob`; weights uniform in
/// `1..=max_weight`. Connected by construction, deterministic in `seed`.
pub fn random_graph(seed: u64, n: usize, edge_prob: f64, max_weight: u64) -> WeightedGraph {
    assert!(n >= 1);
    assert!(max_weight >= 1);
    let mut rng = Prng::new(seed);
    let mut present = vec![false; n * n];
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for v in 1..n {
        let u = rng.below(v as u64) as usize;
        edges.push((u, v, 1 + rng.below(max_weight)));
        present[u * n + v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u * n + v] && rng.chance(edge_prob) {
                edges.push((u, v, 1 + rng.below(max_weight)));
            }
        }
    }
    build_graph(n, &edges).expect("generated edges are simple and in range")
}

/// Random class-partitioned unit source: `k` contiguous classes of
/// `class_size` vertices; each cross-class pair becomes an edge with
/// probability `edge_prob`. Within-class pairs stay non-adjacent; a
/// transversal clique never uses them.
pub fn random_mcc(seed: u64, k: usize, class_size: usize, edge_prob: f64) -> MccInstance {
    assert!(k >= 2);
    assert!(class_size >= 1);
    let mut rng = Prng::new(seed);
    let n = k * class_size;
    let class_of = |v: usize| v / class_size;
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if class_of(u) != class_of(v) && rng.chance(edge_prob) {
                edges.push((u, v, 1));
            }
        }
    }
    let classes = (0..k)
        .map(|i| (i * class_size..(i + 1) * class_size).collect())
        .collect();
    MccInstance::new(
        build_graph(n, &edges).expect("generated edges are simple and in range"),
        classes,
    )
    .expect("contiguous classes partition the vertex set")
}

/// Random connected bipartite unit graph with no isolated vertex: sides
/// `0..left` and `left..left+right`, each vertex after the first joined
/// to a random earlier vertex on the other side, then each remaining
/// cross pair independently with probability `edge_prob`.
pub fn random_bipartite_connected(
    seed: u64,
    left: usize,
    right: usize,
    edge_prob: f64,
) -> WeightedGraph {
    assert!(left >= 1 && right >= 1);
    let mut rng = Prng::new(seed);
    let n = left + right;
    // Interleave the sides so every new vertex has an earlier neighbor
    // available on the other side.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for i in 0..left.max(right) {
        if i < left {
            order.push(i);
        }
        if i < right {
            order.push(left + i);
        }
    }
    let mut present = vec![false; n * n];
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for (placed, &v) in order.iter().enumerate().skip(1) {
        let opposite: Vec<usize> = order[..placed]
            .iter()
            .copied()
            .filter(|&u| (u < left) != (v < left))
            .collect();
        let u = opposite[rng.below(opposite.len() as u64) as usize];
        let (a, b) = (u.min(v), u.max(v));
        edges.push((a, b, 1));
        present[a * n + b] = true;
    }
    for u in 0..left {
        for v in left..n {
            if !present[u * n + v] && rng.chance(edge_prob) {
                edges.push((u, v, 1));
            }
        }
    }
    build_graph(n, &edges).expect("generated edges are simple and in range")
}

/// Cap on the transversal count the clique search enumerates.
pub const MAX_MCC_COMBOS: u128 = 1_000_000;

/// Exhaustive transversal search: every way of picking one vertex per
/// class, in odometer order; the first pairwise-adjacent pick wins.
pub fn solve_mcc_bruteforce(mcc: &MccInstance) -> Result<Option<Vec<usize>>, HarnessError> {
    let classes = mcc.classes();
    let combos: u128 = classes.iter().map(|c| c.len() as u128).product();
    if combos > MAX_MCC_COMBOS {
        return Err(HarnessError::SearchTooLarge {
            what: "transversals",
            size: combos,
            cap: MAX_MCC_COMBOS,
        });
    }
    let g = mcc.graph();
    let k = classes.len();
    let mut idx = vec![0usize; k];
    loop {
        let pick: Vec<usize> = (0..k).map(|i| classes[i][idx[i]]).collect();
        if pick
            .iter()
            .enumerate()
            .all(|(i, &u)| pick[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        {
            return Ok(Some(pick));
        }
        let mut at = k;
        loop {
            if at == 0 {
                return Ok(None);
            }
            at -= 1;
            idx[at] += 1;
            if idx[at] < classes[at].len() {
                break;
            }
            idx[at] = 0;
        }
    }
}

/// Whether `pick` selects one vertex per class and is pairwise adjacent.
pub fn is_multicolored_clique(mcc: &MccInstance, pick: &[usize]) -> bool {
    let k = mcc.k();
    if pick.len() != k {
        return false;
    }
    let n = mcc.n();
    let mut seen = vec![false; k];
    for &v in pick {
        if v >= n {
            return false;
        }
        let c = mcc.class_of(v) - 1;
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    pick.iter()
        .enumerate()
        .all(|(i, &u)| pick[i + 1..].iter().all(|&v| mcc.graph().has_edge(u, v)))
}

/// Cap on the vertex count the domination search accepts.
pub const MAX_DS_N: usize = 20;

/// Smallest-first subset search for a dominating set of size at most `k`.
pub fn solve_ds_bruteforce(
    g: &WeightedGraph,
    k: usize,
) -> Result<Option<Vec<usize>>, HarnessError> {
    let n = g.n();
    if n > MAX_DS_N {
        return Err(HarnessError::SearchTooLarge {
            what: "domination vertices",
            size: n as u128,
            cap: MAX_DS_N as u128,
        });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u32 << v, |acc, &(u, _)| acc | (1 << u))
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    for size in 1..=k.min(n) {
        let mut picks: Vec<usize> = (0..size).collect();
        loop {
            if picks.iter().fold(0u32, |acc, &v| acc | closed[v]) == full {
                return Ok(Some(picks));
            }
            if !next_combination(&mut picks, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether every vertex lies in the closed neighborhood of `set`.
pub fn is_dominating_set(g: &WeightedGraph, set: &[usize]) -> bool {
    let n = g.n();
    let mut hit = vec![false; n];
    for &v in set {
        if v >= n {
            return false;
        }
        hit[v] = true;
        for &(u, _) in g.neighbors(v) {
            hit[u] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv_u64(mut h: u64, x: u64) -> u64 {
    for b in x.to_le_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// FNV-1a digest of a graph's shape, stable across runs and platforms.
pub fn digest_graph(g: &WeightedGraph) -> u64 {
    let mut h = fnv_u64(FNV_OFFSET, g.n() as u64);
    for &(u, v, w) in g.edges() {
        h = fnv_u64(fnv_u64(fnv_u64(h, u as u64), v as u64), w);
    }
    h
}

/// Digest of a graph-backed problem: graph shape plus `k` and budget.
pub fn digest_problem(p: &MsrProblem) -> u64 {
    let h = fnv_u64(digest_graph(&p.graph), p.k as u64);
    fnv_u64(h, p.delta.map_or(u64::MAX, |d| d))
}

/// One reduction-equivalence disagreement, replayable from its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub seed: u64,
    pub source_answer: bool,
    pub target_answer: bool,
    pub digest: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFailure {
    pub seed: u64,
    pub detail: String,
}

/// Outcome of a differential run. `trials` counts compared trials, so
/// `agreements + mismatches.len() == trials` always; trials that timed
/// out before producing both answers appear only in `timeouts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub reduction: ReductionId,
    pub trials: u64,
    pub agreements: u64,
    pub mismatches: Vec<Mismatch>,
    pub witness_failures: Vec<WitnessFailure>,
    pub timeouts: u64,
}

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.witness_failures.is_empty()
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduction {}", self.reduction.cli_name())?;
        writeln!(f, "trials {}", self.trials)?;
        writeln!(f, "agreements {}", self.agreements)?;
        writeln!(f, "mismatches {}", self.mismatches.len())?;
        writeln!(f, "witness_failures {}", self.witness_failures.len())?;
        writeln!(f, "timeouts {}", self.timeouts)?;
        for m in &self.mismatches {
            writeln!(
                f,
                "mismatch seed={} source={} target={} digest={:016x}",
                m.seed,
                if m.source_answer { "yes" } else { "no" },
                if m.target_answer { "yes" } else { "no" },
                m.digest
            )?;
        }
        for w in &self.witness_failures {
            writeln!(f, "witness_failure seed={} detail={}", w.seed, w.detail)?;
        }
        Ok(())
    }
}

/// Size bounds and reproducibility knobs for random fuzzing.
#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    /// Largest class count for clique sources (drawn from `2..=k_max`).
    pub k_max: usize,
    /// Largest class size for clique sources (drawn from `1..=class_max`).
    pub class_max: usize,
    /// Largest vertex count for graph sources (drawn from `2..=n_max`).
    pub n_max: usize,
    /// Largest edge weight for weighted graph sources.
    pub max_weight: u64,
    pub timeout: Option<Duration>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 100,
            seed: 1,
            k_max: 3,
            class_max: 3,
            n_max: 7,
            max_weight: 5,
            timeout: None,
        }
    }
}

/// The source instance one fuzz trial feeds its reduction.
#[derive(Debug, Clone)]
pub enum FuzzSource {
    Mcc(MccInstance),
    Ds(WeightedGraph, usize),
    Problem(MsrProblem),
}

/// Rebuilds the source a random trial used, as a pure function of the
/// run seed and trial index; reports name trials by this derived seed.
pub fn trial_seed(run_seed: u64, trial: u64) -> u64 {
    Prng::new(run_seed ^ (trial + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
}

pub fn trial_source(id: ReductionId, cfg: &FuzzConfig, seed: u64) -> FuzzSource {
    let mut rng = Prng::new(seed);
    match id {
        ReductionId::MccWeightedBipartite
        | ReductionId::MccVertexCover
        | ReductionId::MccAllowedKDelta
        | ReductionId::MccAllowedFvs => {
            let k = 2 + rng.below(cfg.k_max.max(2) as u64 - 1) as usize;
            let size = 1 + rng.below(cfg.class_max.max(1) as u64) as usize;
            let p = rng.below(101) as f64 / 100.0;
            FuzzSource::Mcc(random_mcc(rng.next_u64(), k, size, p))
        }
        ReductionId::DsExact => {
            let n = 2 + rng.below(cfg.n_max.max(2) as u64 - 1) as usize;
            let left = 1 + rng.below(n as u64 - 1) as usize;
            let p = rng.below(101) as f64 / 100.0;
            let g = random_bipartite_connected(rng.next_u64(), left, n - left, p);
            let k = 1 + rng.below(3.min(n as u64)) as usize;
            FuzzSource::Ds(g, k)
        }
        ReductionId::AugmentComplete | ReductionId::AugmentCompleteBipartite => {
            let n = 2 + rng.below(cfg.n_max.max(2) as u64 - 1) as usize;
            let p = rng.below(101) as f64 / 100.0;
            let g = if id == ReductionId::AugmentComplete {
                random_graph(rng.next_u64(), n, p, cfg.max_weight)
            } else {
                let left = 1 + rng.below(n as u64 - 1) as usize;
                random_bipartite_connected(rng.next_u64(), left, n - left, p)
            };
            let k = 1 + rng.below(3) as usize;
            let total: u64 = g.edges().iter().map(|e| e.2).sum();
            let delta = rng.below(total + 2);
            FuzzSource::Problem(MsrProblem {
                graph: g,
                k,
                delta: Some(delta),
                variant: Variant::Standard,
            })
        }
    }
}

/// Differential run over seeded random sources. Per trial: build the
/// source, answer it by brute force, build the reduction's output,
/// decide it at its budget, and compare; on agreed yes-instances,
/// additionally solve the output and read the witness back.
pub fn fuzz_equivalence(
    id: ReductionId,
    cfg: &FuzzConfig,
) -> Result<EquivalenceReport, HarnessError> {
    let sources: Vec<(u64, FuzzSource)> = (0..cfg.trials)
        .map(|t| {
            let seed = trial_seed(cfg.seed, t);
            (seed, trial_source(id, cfg, seed))
        })
        .collect();
    run_trials(id, sources, cfg.timeout)
}

/// Every class-partitioned source with two classes of sizes up to
/// `class_max`, over all cross-edge subsets (sizes taken unordered).
pub fn exhaustive_mcc_sources(class_max: usize) -> Vec<MccInstance> {
    let mut out = Vec::new();
    for a in 1..=class_max {
        for b in a..=class_max {
            let n = a + b;
            let pairs: Vec<(usize, usize)> = (0..a)
                .flat_map(|u| (a..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u64..(1 << pairs.len()) {
                let edges: Vec<(usize, usize, u64)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &(u, v))| (u, v, 1))
                    .collect();
                out.push(
                    MccInstance::new(
                        build_graph(n, &edges).unwrap(),
                        vec![(0..a).collect(), (a..n).collect()],
                    )
                    .unwrap(),
                );
            }
        }
    }
    out
}

/// All labeled unit graphs on `n` vertices whose adjacency passes `keep`.
fn enumerate_unit_graphs(n: usize, mut keep: impl FnMut(&[u32]) -> bool) -> Vec<WeightedGraph> {
    assert!((1..=8).contains(&n), "labeled enumeration is desk-scale");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut adj = [0u32; 8];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if keep(&adj[..n]) {
            let edges: Vec<(usize, usize, u64)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << *i) != 0)
                .map(|(_, &(u, v))| (u, v, 1))
                .collect();
            out.push(build_graph(n, &edges).unwrap());
        }
    }
    out
}

fn mask_connected(adj: &[u32]) -> bool {
    let n = adj.len();
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        let mut f = seen;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        if next == seen {
            return seen.count_ones() as usize == n;
        }
        seen = next;
    }
}

fn mask_bipartite(adj: &[u32]) -> bool {
    let n = adj.len();
    let mut color = [2u8; 8];
    for s in 0..n {
        if color[s] != 2 {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let mut f = adj[v];
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                if color[u] == 2 {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// All labeled connected unit graphs on exactly `n` vertices.
pub fn exhaustive_connected_graphs(n: usize) -> Vec<WeightedGraph> {
    enumerate_unit_graphs(n, mask_connected)
}

/// All labeled connected bipartite unit graphs on exactly `n` vertices
/// with no isolated vertex.
pub fn exhaustive_bipartite_sources(n: usize) -> Vec<WeightedGraph> {
    enumerate_unit_graphs(n, |adj| {
        adj.iter().all(|&a| a != 0) && mask_bipartite(adj) && mask_connected(adj)
    })
}

/// Differential run over a small exhaustive source family instead of
/// random draws; report entries name trials by enumeration index.
///
/// * clique reductions: both-class sources with class sizes up to
///   `bound`, all cross-edge subsets;
/// * domination: all connected bipartite isolated-vertex-free graphs
///   with `2..=bound` vertices, `k` in `1..=min(3, n)`;
/// * augmentations: all connected (bipartite) unit graphs with
///   `2..=bound` vertices, `k` in `{1, 2}`, budget at the instance
///   optimum and one below it.
pub fn fuzz_exhaustive(
    id: ReductionId,
    bound: usize,
    timeout: Option<Duration>,
) -> Result<EquivalenceReport, HarnessError> {
    let sources = exhaustive_sources(id, bound, timeout)?;
    let indexed: Vec<(u64, FuzzSource)> = sources
        .into_iter()
        .enumerate()
        .map(|(i, s)| (i as u64, s))
        .collect();
    run_trials(id, indexed, timeout)
}

pub fn exhaustive_sources(
    id: ReductionId,
    bound: usize,
    timeout: Option<Duration>,
) -> Result<Vec<FuzzSource>, HarnessError> {
    Ok(match id {
        ReductionId::MccWeightedBipartite
        | ReductionId::MccVertexCover
        | ReductionId::MccAllowedKDelta
        | ReductionId::MccAllowedFvs => exhaustive_mcc_sources(bound.max(1))
            .into_iter()
            .map(FuzzSource::Mcc)
            .collect(),
        ReductionId::DsExact => {
            let mut out = Vec::new();
            for n in 2..=bound.max(2) {
                for g in exhaustive_bipartite_sources(n) {
                    for k in 1..=3.min(n) {
                        out.push(FuzzSource::Ds(g.clone(), k));
                    }
                }
            }
            out
        }
        ReductionId::AugmentComplete | ReductionId::AugmentCompleteBipartite => {
            let mut out = Vec::new();
            for n in 2..=bound.max(2) {
                let graphs = if id == ReductionId::AugmentComplete {
                    exhaustive_connected_graphs(n)
                } else {
                    exhaustive_bipartite_sources(n)
                };
                for g in graphs {
                    for k in 1..=2.min(n) {
                        let problem = MsrProblem {
                            graph: g.clone(),
                            k,
                            delta: None,
                            variant: Variant::Standard,
                        };
                        let opt = solve_auto(&problem.instance()?, &limits_for(timeout))?
                            .optimal_cost;
                        for delta in [opt.checked_sub(1), Some(opt)].into_iter().flatten() {
                            let mut p = problem.clone();
                            p.delta = Some(delta);
                            out.push(FuzzSource::Problem(p));
                        }
                    }
                }
            }
            out
        }
    })
}

fn limits_for(timeout: Option<Duration>) -> SolveLimits {
    timeout.map(SolveLimits::with_timeout).unwrap_or_default()
}

enum TrialOutcome {
    Agree,
    Mismatch(Mismatch),
    Timeout,
}

fn run_trials(
    id: ReductionId,
    sources: Vec<(u64, FuzzSource)>,
    timeout: Option<Duration>,
) -> Result<EquivalenceReport, HarnessError> {
    let results: Vec<Result<(TrialOutcome, Vec<WitnessFailure>), HarnessError>> = sources
        .par_iter()
        .map(|(seed, src)| run_one(id, *seed, src, timeout))
        .collect();

    let mut report = EquivalenceReport {
        reduction: id,
        trials: 0,
        agreements: 0,
        mismatches: Vec::new(),
        witness_failures: Vec::new(),
        timeouts: 0,
    };
    for r in results {
        let (outcome, failures) = r?;
        report.witness_failures.extend(failures);
        match outcome {
            TrialOutcome::Agree => {
                report.trials += 1;
                report.agreements += 1;
            }
            TrialOutcome::Mismatch(m) => {
                report.trials += 1;
                report.mismatches.push(m);
            }
            TrialOutcome::Timeout => report.timeouts += 1,
        }
    }
    report.mismatches.sort_unstable_by_key(|m| m.seed);
    report.witness_failures.sort_unstable_by_key(|w| w.seed);
    Ok(report)
}

fn run_one(
    id: ReductionId,
    seed: u64,
    src: &FuzzSource,
    timeout: Option<Duration>,
) -> Result<(TrialOutcome, Vec<WitnessFailure>), HarnessError> {
    let limits = limits_for(timeout);
    match (id, src) {
        (
            ReductionId::MccWeightedBipartite
            | ReductionId::MccVertexCover
            | ReductionId::MccAllowedKDelta
            | ReductionId::MccAllowedFvs,
            FuzzSource::Mcc(mcc),
        ) => run_mcc_trial(id, seed, mcc, &limits),
        (ReductionId::DsExact, FuzzSource::Ds(g, k)) => run_ds_trial(seed, g, *k, &limits),
        (
            ReductionId::AugmentComplete | ReductionId::AugmentCompleteBipartite,
            FuzzSource::Problem(p),
        ) => run_augment_trial(id, seed, p, &limits),
        _ => Err(HarnessError::SourceKind {
            reduction: id.cli_name(),
        }),
    }
}

fn build_mcc_artifact(
    id: ReductionId,
    mcc: &MccInstance,
) -> Result<Option<ReductionArtifact>, ReductionError> {
    let built = match id {
        ReductionId::MccWeightedBipartite => reduce_mcc_weighted_bipartite(mcc),
        ReductionId::MccVertexCover => reduce_mcc_vertex_cover(mcc),
        ReductionId::MccAllowedKDelta => reduce_mcc_allowed_kdelta(mcc),
        ReductionId::MccAllowedFvs => reduce_mcc_allowed_fvs(mcc),
        _ => unreachable!("clique trial on a clique reduction"),
    };
    match built {
        Ok(art) => Ok(Some(art)),
        // The screen is itself a decision: the source has no transversal.
        Err(ReductionError::TrivialNo { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_mcc_trial(
    id: ReductionId,
    seed: u64,
    mcc: &MccInstance,
    limits: &SolveLimits,
) -> Result<(TrialOutcome, Vec<WitnessFailure>), HarnessError> {
    let source_answer = solve_mcc_bruteforce(mcc)?.is_some();
    let art = build_mcc_artifact(id, mcc)?;
    let (target_answer, digest) = match &art {
        None => (false, digest_graph(mcc.graph())),
        Some(a) => {
            let d = digest_problem(&a.problem);
            match decide(&a.instance, limits) {
                Ok(ans) => (ans, d),
                Err(SolveError::Timeout) => return Ok((TrialOutcome::Timeout, Vec::new())),
                Err(e) => return Err(e.into()),
            }
        }
    };

    if source_answer != target_answer {
        return Ok((
            TrialOutcome::Mismatch(Mismatch {
                seed,
                source_answer,
                target_answer,
                digest,
            }),
            Vec::new(),
        ));
    }

    let mut failures = Vec::new();
    if source_answer {
        let art = art.expect("yes answers imply a built artifact");
        match solve_auto(&art.instance, limits) {
            Ok(report) => {
                if report.optimal_cost != art.meta.budget {
                    failures.push(WitnessFailure {
                        seed,
                        detail: format!(
                            "optimum {} differs from budget {}",
                            report.optimal_cost, art.meta.budget
                        ),
                    });
                } else {
                    let extracted = match id {
                        ReductionId::MccWeightedBipartite | ReductionId::MccAllowedKDelta => {
                            extract_clique_weighted(&art, &report.clustering)
                        }
                        _ => extract_clique_vertex_cover(&art, &report.clustering),
                    };
                    match extracted {
                        Ok(pick) => {
                            let norm = normalize_mcc(mcc)?;
                            if !is_multicolored_clique(&norm, &pick) {
                                failures.push(WitnessFailure {
                                    seed,
                                    detail: format!("extracted {pick:?} is not a clique"),
                                });
                            }
                        }
                        Err(e) => failures.push(WitnessFailure {
                            seed,
                            detail: format!("extraction failed: {e}"),
                        }),
                    }
                }
            }
            Err(SolveError::Timeout) => failures.push(WitnessFailure {
                seed,
                detail: "timeout while solving for a witness".into(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((TrialOutcome::Agree, failures))
}

fn run_ds_trial(
    seed: u64,
    g: &WeightedGraph,
    k: usize,
    limits: &SolveLimits,
) -> Result<(TrialOutcome, Vec<WitnessFailure>), HarnessError> {
    let source_answer = solve_ds_bruteforce(g, k)?.is_some();
    let art = reduce_ds_to_exact(g, k)?;
    let target_answer = match decide(&art.instance, limits) {
        Ok(ans) => ans,
        Err(SolveError::Timeout) => return Ok((TrialOutcome::Timeout, Vec::new())),
        Err(e) => return Err(e.into()),
    };
    if source_answer != target_answer {
        return Ok((
            TrialOutcome::Mismatch(Mismatch {
                seed,
                source_answer,
                target_answer,
                digest: digest_problem(&art.problem),
            }),
            Vec::new(),
        ));
    }
    let mut failures = Vec::new();
    if source_answer {
        match solve_auto(&art.instance, limits) {
            Ok(report) => {
                let centers: Vec<usize> =
                    report.clustering.pairs().iter().map(|&(c, _)| c).collect();
                if !is_dominating_set(g, &centers) {
                    failures.push(WitnessFailure {
                        seed,
                        detail: format!("centers {centers:?} do not dominate"),
                    });
                }
            }
            Err(SolveError::Timeout) => failures.push(WitnessFailure {
                seed,
                detail: "timeout while solving for a witness".into(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((TrialOutcome::Agree, failures))
}

fn run_augment_trial(
    id: ReductionId,
    seed: u64,
    problem: &MsrProblem,
    limits: &SolveLimits,
) -> Result<(TrialOutcome, Vec<WitnessFailure>), HarnessError> {
    let augmented = match id {
        ReductionId::AugmentComplete => augment_complete(problem)?,
        _ => augment_complete_bipartite(problem)?,
    };

    let mut failures = Vec::new();
    let n = augmented.graph.n();
    match id {
        ReductionId::AugmentComplete => {
            if augmented.graph.m() != n * (n - 1) / 2 {
                failures.push(WitnessFailure {
                    seed,
                    detail: "output graph is not complete".into(),
                });
            }
        }
        _ => {
            let complete_bipartite = is_bipartite(&augmented.graph).is_some_and(|side| {
                (0..n).all(|u| {
                    (u + 1..n).all(|v| augmented.graph.has_edge(u, v) == (side[u] != side[v]))
                })
            });
            if !complete_bipartite {
                failures.push(WitnessFailure {
                    seed,
                    detail: "output graph is not complete bipartite".into(),
                });
            }
        }
    }

    let source_answer = match decide(&problem.instance()?, limits) {
        Ok(ans) => ans,
        Err(SolveError::Timeout) => return Ok((TrialOutcome::Timeout, failures)),
        Err(e) => return Err(e.into()),
    };
    let target_answer = match decide(&augmented.instance()?, limits) {
        Ok(ans) => ans,
        Err(SolveError::Timeout) => return Ok((TrialOutcome::Timeout, failures)),
        Err(e) => return Err(e.into()),
    };
    if source_answer != target_answer {
        return Ok((
            TrialOutcome::Mismatch(Mismatch {
                seed,
                source_answer,
                target_answer,
                digest: digest_problem(&augmented),
            }),
            failures,
        ));
    }
    Ok((TrialOutcome::Agree, failures))
}
