//! Command-line front end: solve, reduce, verify, fuzz, stats, gen.
//!
//! Exit codes: 0 success, 1 unreadable or ill-typed input, 2 a negative
//! answer (infeasible instance, invalid clustering, fuzz disagreement),
//! 3 a resource limit (size cap or timeout), 4 a source screened as a
//! trivial no. Successful runs write nothing to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};

use msr_core::harness::{
    self, digest_graph, fuzz_equivalence, fuzz_exhaustive, random_bipartite_connected,
    random_graph, random_mcc, trial_source, FuzzConfig, FuzzSource, HarnessError,
};
use msr_core::io::{self, IoError};
use msr_core::metric::shortest_path_metric;
use msr_core::params::{structural_profile, ParamError};
use msr_core::reductions::{
    augment_complete, augment_complete_bipartite, reduce_ds_to_exact, reduce_mcc_allowed_fvs,
    reduce_mcc_allowed_kdelta, reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite,
    MsrProblem, ReductionError, ReductionId,
};
use msr_core::solver::{
    solve_auto, solve_branch_bound, solve_cover_dp, solve_enumerate, verify_clustering,
    SolveError, SolveLimits, SolveReport, Variant, Verdict,
};

#[derive(Parser)]
#[command(name = "msr", about = "Exact min-sum-radii clustering on graph metrics")]
struct Cli {
    /// Worker threads for fuzzing (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Per-solve time limit in milliseconds.
    #[arg(long, global = true, default_value_t = 60_000)]
    timeout_ms: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file to optimality.
    Solve {
        instance: PathBuf,
        /// Algorithm: auto, dp, bb, or enum.
        #[arg(long, default_value = "auto")]
        algo: String,
    },
    /// Build an instance from a source problem and write it with its
    /// point-role sidecar.
    Reduce {
        source: PathBuf,
        /// One of thm1, thm2, thm3c, thm3cb, thm4, thm5, thm6.
        #[arg(long)]
        reduction: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a clustering file against an instance file.
    Verify {
        instance: PathBuf,
        clustering: PathBuf,
    },
    /// Differentially test one reduction against brute force.
    Fuzz {
        /// One of thm1, thm2, thm3c, thm3cb, thm4, thm5, thm6.
        #[arg(long)]
        reduction: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Replace random trials with the exhaustive family up to this
        /// size bound.
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        class_max: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        /// Where mismatching sources are written for replay.
        #[arg(long, default_value = ".")]
        persist_dir: PathBuf,
    },
    /// Print structural parameters of a graph file.
    Stats { graph: PathBuf },
    /// Generate a seeded random source or instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Connected graph with random extra edges and weights.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Class-partitioned clique source with random cross edges.
    Mcc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        class_size: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected bipartite domination source with a budget.
    Ds {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solvable instance over a random connected graph.
    Instance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A terminal outcome: the message, where it goes, and the exit code.
struct Failure {
    code: u8,
    msg: String,
    answer: bool,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
            answer: false,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let code = match e {
            ReductionError::TrivialNo { .. } => 4,
            ReductionError::SizeGuard { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
            answer: code == 4,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Infeasible => Failure {
                code: 2,
                msg: "infeasible".into(),
                answer: true,
            },
            SolveError::Timeout | SolveError::SizeCap { .. } => Failure {
                code: 3,
                msg: e.to_string(),
                answer: false,
            },
            SolveError::MissingBudget => Failure::usage(e.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::SearchTooLarge { .. } => Failure {
                code: 3,
                msg: e.to_string(),
                answer: false,
            },
            HarnessError::Reduction(inner) => inner.into(),
            HarnessError::Solve(inner) => inner.into(),
            HarnessError::SourceKind { .. } => Failure::usage(e.to_string()),
        }
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure {
            code: 3,
            msg: e.to_string(),
            answer: false,
        }
    }
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    let limits = SolveLimits::with_timeout(Duration::from_millis(cli.timeout_ms));
    let timeout = Duration::from_millis(cli.timeout_ms);
    let result = match cli.cmd {
        Cmd::Solve { instance, algo } => cmd_solve(&instance, &algo, &limits),
        Cmd::Reduce {
            source,
            reduction,
            out,
        } => cmd_reduce(&source, &reduction, &out),
        Cmd::Verify {
            instance,
            clustering,
        } => cmd_verify(&instance, &clustering),
        Cmd::Fuzz {
            reduction,
            trials,
            seed,
            exhaustive,
            k_max,
            class_max,
            n_max,
            max_weight,
            persist_dir,
        } => {
            let cfg = FuzzConfig {
                trials,
                seed,
                k_max,
                class_max,
                n_max,
                max_weight,
                timeout: Some(timeout),
            };
            cmd_fuzz(&reduction, &cfg, exhaustive, &persist_dir)
        }
        Cmd::Stats { graph } => cmd_stats(&graph),
        Cmd::Gen { kind } => cmd_gen(kind),
    };
    match result {
        Ok(code) => std::process::ExitCode::from(code),
        Err(f) => {
            if f.answer {
                println!("{}", f.msg);
            } else {
                eprintln!("error: {}", f.msg);
            }
            std::process::ExitCode::from(f.code)
        }
    }
}

fn print_solution(report: &SolveReport) {
    let pairs: Vec<String> = report
        .clustering
        .pairs()
        .iter()
        .map(|&(c, r)| format!("({c},{r})"))
        .collect();
    println!("cost {}; {}", report.optimal_cost, pairs.join(", "));
    println!(
        "algorithm {} nodes {} elapsed_ms {}",
        report.algorithm.name(),
        report.nodes_explored,
        report.elapsed.as_millis()
    );
}

fn cmd_solve(path: &Path, algo: &str, limits: &SolveLimits) -> Result<u8, Failure> {
    let problem = io::read_instance_json(&fs::read_to_string(path)?)?;
    let inst = problem.instance()?;
    let report = match algo {
        "auto" => solve_auto(&inst, limits),
        "dp" => solve_cover_dp(&inst, limits),
        "bb" => solve_branch_bound(&inst, limits),
        "enum" => solve_enumerate(&inst, limits),
        other => return Err(Failure::usage(format!("unknown algorithm {other:?}"))),
    }?;
    print_solution(&report);
    Ok(0)
}

fn problem_summary(p: &MsrProblem) -> String {
    let delta = match p.delta {
        Some(d) => d.to_string(),
        None => "none".into(),
    };
    let variant = match &p.variant {
        Variant::Standard => String::new(),
        v => format!(", variant={}", v.name()),
    };
    format!("{} points, k={}, delta={}{}", p.graph.n(), p.k, delta, variant)
}

fn cmd_reduce(source: &Path, reduction: &str, out: &Path) -> Result<u8, Failure> {
    let id = ReductionId::from_cli_name(reduction)
        .ok_or_else(|| Failure::usage(format!("unknown reduction {reduction:?}")))?;
    let text = fs::read_to_string(source)?;
    let (problem, roles) = match id {
        ReductionId::MccWeightedBipartite
        | ReductionId::MccVertexCover
        | ReductionId::MccAllowedKDelta
        | ReductionId::MccAllowedFvs => {
            let mcc = io::read_mcc_text(&text)?;
            let art = match id {
                ReductionId::MccWeightedBipartite => reduce_mcc_weighted_bipartite(&mcc),
                ReductionId::MccVertexCover => reduce_mcc_vertex_cover(&mcc),
                ReductionId::MccAllowedKDelta => reduce_mcc_allowed_kdelta(&mcc),
                _ => reduce_mcc_allowed_fvs(&mcc),
            }?;
            (art.problem.clone(), Some(art.roles))
        }
        ReductionId::DsExact => {
            let (g, k) = io::read_ds_text(&text)?;
            let art = reduce_ds_to_exact(&g, k)?;
            (art.problem.clone(), Some(art.roles))
        }
        ReductionId::AugmentComplete | ReductionId::AugmentCompleteBipartite => {
            let base = io::read_instance_json(&text)?;
            let augmented = match id {
                ReductionId::AugmentComplete => augment_complete(&base),
                _ => augment_complete_bipartite(&base),
            }?;
            (augmented, None)
        }
    };
    fs::write(out, io::write_instance_json(&problem))?;
    if let Some(roles) = roles {
        fs::write(out.with_extension("roles"), io::write_roles_text(&roles))?;
    }
    println!("{}", problem_summary(&problem));
    Ok(0)
}

fn cmd_verify(instance: &Path, clustering: &Path) -> Result<u8, Failure> {
    let problem = io::read_instance_json(&fs::read_to_string(instance)?)?;
    let inst = problem.instance()?;
    let clustering = io::read_clustering_json(&fs::read_to_string(clustering)?)?;
    match verify_clustering(&inst, &clustering) {
        Verdict::Valid { cost } => {
            println!("valid cost {cost}");
            Ok(0)
        }
        Verdict::Invalid(reason) => {
            println!("invalid: {reason}");
            Ok(2)
        }
    }
}

fn persist_mismatches(
    id: ReductionId,
    cfg: &FuzzConfig,
    exhaustive: Option<usize>,
    report: &harness::EquivalenceReport,
    dir: &Path,
) -> Result<(), Failure> {
    let exhaustive_pool = match exhaustive {
        Some(bound) => harness::exhaustive_sources(id, bound, cfg.timeout)?,
        None => Vec::new(),
    };
    for m in &report.mismatches {
        let source = match exhaustive {
            Some(_) => exhaustive_pool[m.seed as usize].clone(),
            None => trial_source(id, cfg, m.seed),
        };
        let stem = format!("mismatch-{}-{}", id.cli_name(), m.seed);
        let path = match source {
            FuzzSource::Mcc(mcc) => {
                let p = dir.join(format!("{stem}.txt"));
                fs::write(&p, io::write_mcc_text(&mcc))?;
                p
            }
            FuzzSource::Ds(g, k) => {
                let p = dir.join(format!("{stem}.txt"));
                fs::write(&p, io::write_ds_text(&g, k))?;
                p
            }
            FuzzSource::Problem(problem) => {
                let p = dir.join(format!("{stem}.json"));
                fs::write(&p, io::write_instance_json(&problem))?;
                p
            }
        };
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_fuzz(
    reduction: &str,
    cfg: &FuzzConfig,
    exhaustive: Option<usize>,
    persist_dir: &Path,
) -> Result<u8, Failure> {
    let id = ReductionId::from_cli_name(reduction)
        .ok_or_else(|| Failure::usage(format!("unknown reduction {reduction:?}")))?;
    let report = match exhaustive {
        Some(bound) => fuzz_exhaustive(id, bound, cfg.timeout)?,
        None => fuzz_equivalence(id, cfg)?,
    };
    print!("{report}");
    if report.is_clean() {
        println!("all agree");
        Ok(0)
    } else {
        persist_mismatches(id, cfg, exhaustive, &report, persist_dir)?;
        println!("disagreements found");
        Ok(2)
    }
}

fn cmd_stats(path: &Path) -> Result<u8, Failure> {
    let g = io::read_graph_text(&fs::read_to_string(path)?)?;
    let metric = shortest_path_metric(&g).map_err(|e| Failure::usage(e.to_string()))?;
    let profile = structural_profile(&g, &metric)?;
    println!(
        "td={} tw={} vc={} fvs={} ell={} nbhd={}",
        profile.treedepth,
        profile.treewidth,
        profile.vertex_cover,
        profile.feedback_vertex,
        profile.longest_path,
        profile.neighborhood_max
    );
    Ok(0)
}

fn cmd_gen(kind: GenKind) -> Result<u8, Failure> {
    let (path, text, note) = match kind {
        GenKind::Graph {
            n,
            edge_prob,
            max_weight,
            seed,
            out,
        } => {
            let g = random_graph(seed, n, edge_prob, max_weight);
            let note = format!("{} points, {} edges, digest {:016x}", g.n(), g.m(), digest_graph(&g));
            (out, io::write_graph_text(&g), note)
        }
        GenKind::Mcc {
            k,
            class_size,
            edge_prob,
            seed,
            out,
        } => {
            let mcc = random_mcc(seed, k, class_size, edge_prob);
            let note = format!(
                "{} points, {} edges, k={}",
                mcc.n(),
                mcc.graph().m(),
                mcc.k()
            );
            (out, io::write_mcc_text(&mcc), note)
        }
        GenKind::Ds {
            left,
            right,
            k,
            edge_prob,
            seed,
            out,
        } => {
            let g = random_bipartite_connected(seed, left, right, edge_prob);
            let note = format!("{} points, {} edges, k={}", g.n(), g.m(), k);
            (out, io::write_ds_text(&g, k), note)
        }
        GenKind::Instance {
            n,
            k,
            edge_prob,
            max_weight,
            delta,
            seed,
            out,
        } => {
            let problem = MsrProblem {
                graph: random_graph(seed, n, edge_prob, max_weight),
                k,
                delta,
                variant: Variant::Standard,
            };
            let note = problem_summary(&problem);
            (out, io::write_instance_json(&problem), note)
        }
    };
    fs::write(&path, text)?;
    println!("wrote {}: {}", path.display(), note);
    Ok(0)
}
