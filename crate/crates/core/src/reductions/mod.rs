//! Budget-carrying instance constructions that translate clique and
//! domination problems into min-sum-radii clustering, with role-tagged
//! outputs so witnesses can be pulled back to the source problem.
//!
//! Each construction emits a [`ReductionArtifact`]: the built graph and
//! instance, a total role map over its points, and the scale data (budget,
//! per-class weight offsets) needed to read radii back as choices.
//!
//! Construction outputs can fall apart into one component per class (for
//! example when every cross-class pair is adjacent, so no shared gadget
//! vertex exists). Metrics here require connectivity, so builders append
//! bridge edges from the component holding vertex 0 to the lowest apex or
//! anchor of every other component. Bridge weights sit one unit above the
//! class-scale distances they parallel: far enough that no budgeted ball
//! gains a cheaper reach across them, yet short enough that after unit
//! subdivision the interior bridge points still lie inside the balls the
//! budget already pays for. Bridges are bridges in the graph sense too,
//! so bipartiteness and the cover/feedback witnesses are unchanged.

mod augment;
mod cover;
mod ds;
mod subdivide;
mod weighted;

pub use augment::{augment_complete, augment_complete_bipartite};
pub use cover::{
    extract_clique_vertex_cover, forward_clustering_vertex_cover, reduce_mcc_vertex_cover,
};
pub use ds::reduce_ds_to_exact;
pub use subdivide::{reduce_mcc_allowed_fvs, reduce_mcc_allowed_kdelta};
pub use weighted::{
    extract_clique_weighted, forward_clustering_weighted, reduce_mcc_weighted_bipartite,
};

use thiserror::Error;

use crate::graph::{build_graph, GraphError, WeightedGraph};
use crate::metric::shortest_path_metric;
use crate::solver::{InstanceError, MsrInstance, Variant};

/// Largest edge weight any construction may emit. Matches the metric
/// entry cap, so built graphs stay inside exact `u64` arithmetic.
pub const MAX_CONSTRUCTION_WEIGHT: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clique reductions need k >= 2 (got {k})")]
    KTooSmall { k: usize },
    #[error("class {class} is empty")]
    EmptyClass { class: usize },
    #[error("vertex {vertex} appears in no class")]
    UnassignedVertex { vertex: usize },
    #[error("vertex {vertex} appears in more than one class")]
    OverlappingClasses { vertex: usize },
    #[error("source graph must be unit-weight")]
    SourceNotUnit,
    #[error("source graph must be bipartite")]
    NotBipartite,
    #[error("vertex {vertex} is isolated")]
    IsolatedVertex { vertex: usize },
    #[error("budget k = {k} exceeds point count n = {n}")]
    BudgetTooLarge { k: usize, n: usize },
    #[error("input instance must carry a budget")]
    MissingBudget,
    /// The source answer is forced negative before construction: some
    /// cross-class non-adjacent pair has no third vertex in either class,
    /// so its gadget vertex would be isolated.
    #[error("trivial no-instance: classes {i} and {j} are non-adjacent singletons")]
    TrivialNo { i: usize, j: usize },
    #[error("construction too large: {what} = {size} exceeds cap {cap}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Why a clustering cannot be read back as a source witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("clustering has {got} pairs; extraction needs exactly {want}")]
    WrongPairCount { got: usize, want: usize },
    #[error("center {center} is not an original source vertex")]
    NotOriginal { center: usize },
    #[error("center {center} is not an anchor")]
    NotAnchor { center: usize },
    #[error("class {class} is chosen by {count} centers; need exactly one")]
    ClassMultiplicity { class: usize, count: usize },
    #[error("radius {radius} at center {center} encodes no class position")]
    RadiusOutOfRange { center: usize, radius: u64 },
}

/// Gadget side markers for anchor and leaf roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// What each point of a constructed instance is. Class indices are
/// 1-based, matching the construction formulas; `Original` keeps the
/// source vertex id and, for class-partitioned sources, its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    Original { vertex: usize, class: Option<usize> },
    Apex { class: usize },
    Anchor { class: usize, sign: Sign },
    Leaf { class: usize, sign: Option<Sign>, index: usize },
    NonEdge { u: usize, v: usize },
    Subdivision { a: usize, b: usize, offset: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionId {
    MccWeightedBipartite,
    MccVertexCover,
    AugmentComplete,
    AugmentCompleteBipartite,
    DsExact,
    MccAllowedKDelta,
    MccAllowedFvs,
}

impl ReductionId {
    /// Stable identifier used by the command line and reports.
    pub fn cli_name(self) -> &'static str {
        match self {
            ReductionId::MccWeightedBipartite => "thm1",
            ReductionId::MccVertexCover => "thm2",
            ReductionId::AugmentComplete => "thm3c",
            ReductionId::AugmentCompleteBipartite => "thm3cb",
            ReductionId::DsExact => "thm4",
            ReductionId::MccAllowedKDelta => "thm5",
            ReductionId::MccAllowedFvs => "thm6",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Self> {
        Some(match s {
            "thm1" => ReductionId::MccWeightedBipartite,
            "thm2" => ReductionId::MccVertexCover,
            "thm3c" => ReductionId::AugmentComplete,
            "thm3cb" => ReductionId::AugmentCompleteBipartite,
            "thm4" => ReductionId::DsExact,
            "thm5" => ReductionId::MccAllowedKDelta,
            "thm6" => ReductionId::MccAllowedFvs,
            _ => return None,
        })
    }
}

/// Scale data of a construction: which reduction produced it, the source
/// budget `k_source`, the common class size where classes were
/// normalized, the instance budget, and per-class weight offsets
/// (1-based class `i` at position `i - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMeta {
    pub id: ReductionId,
    pub k_source: usize,
    pub n_per_class: Option<usize>,
    pub budget: u64,
    pub omega_plus: Vec<u64>,
    pub omega_minus: Vec<u64>,
}

/// A graph-backed instance: the file-level form of [`MsrInstance`], kept
/// alongside the graph so outputs can be serialized and re-derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsrProblem {
    pub graph: WeightedGraph,
    pub k: usize,
    pub delta: Option<u64>,
    pub variant: Variant,
}

impl MsrProblem {
    /// Builds the metric instance this problem denotes.
    pub fn instance(&self) -> Result<MsrInstance, ReductionError> {
        let metric = shortest_path_metric(&self.graph)?;
        Ok(MsrInstance::new(
            metric,
            self.k,
            self.delta,
            self.variant.clone(),
        )?)
    }
}

/// A constructed instance with provenance: the graph-backed problem, the
/// solved form, a role per point, and the construction's scale data.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub problem: MsrProblem,
    pub instance: MsrInstance,
    pub roles: Vec<Role>,
    pub meta: ReductionMeta,
}

impl ReductionArtifact {
    pub(crate) fn build(
        problem: MsrProblem,
        roles: Vec<Role>,
        meta: ReductionMeta,
    ) -> Result<Self, ReductionError> {
        let instance = problem.instance()?;
        assert_eq!(roles.len(), instance.n(), "roles must cover every point");
        assert_eq!(meta.budget, instance.delta().unwrap_or(meta.budget));
        Ok(ReductionArtifact {
            problem,
            instance,
            roles,
            meta,
        })
    }

    /// Source vertices of class `class` (1-based), ascending. For
    /// class-partitioned constructions the h-th member (1-based) of the
    /// returned list is the class's h-th vertex in the weight formulas.
    pub fn class_members(&self, class: usize) -> Vec<usize> {
        let mut members: Vec<usize> = self
            .roles
            .iter()
            .filter_map(|r| match r {
                Role::Original {
                    vertex,
                    class: Some(c),
                } if *c == class => Some(*vertex),
                _ => None,
            })
            .collect();
        members.sort_unstable();
        members
    }
}

/// A clique-cover source: a unit graph with its vertex set partitioned
/// into classes. The question is whether some clique picks exactly one
/// vertex from each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    graph: WeightedGraph,
    classes: Vec<Vec<usize>>,
}

impl MccInstance {
    /// Validates that classes are nonempty, disjoint, and cover the
    /// vertex set. Class member lists are stored sorted.
    pub fn new(graph: WeightedGraph, classes: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        if !graph.unit() {
            return Err(ReductionError::SourceNotUnit);
        }
        let n = graph.n();
        let mut owner = vec![usize::MAX; n];
        for (ci, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(ReductionError::EmptyClass { class: ci + 1 });
            }
            for &v in class {
                if v >= n {
                    return Err(ReductionError::Graph(GraphError::VertexOutOfRange {
                        vertex: v,
                        n,
                    }));
                }
                if owner[v] != usize::MAX {
                    return Err(ReductionError::OverlappingClasses { vertex: v });
                }
                owner[v] = ci;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(ReductionError::UnassignedVertex { vertex: v });
        }
        let classes = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(MccInstance { graph, classes })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// 1-based class index of a vertex.
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
            .expect("classes cover the vertex set")
            + 1
    }

    /// Cross-class vertex pairs that are not adjacent, in canonical
    /// order: class pair (i, j) ascending, then (u, v) ascending.
    pub fn cross_non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.classes.len() {
            for j in i + 1..self.classes.len() {
                for &u in &self.classes[i] {
                    for &v in &self.classes[j] {
                        if !self.graph.has_edge(u, v) {
                            out.push((u, v));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Pads every class with fresh isolated vertices up to the largest class
/// size. Isolated vertices can never join a clique with another vertex,
/// so the answer is unchanged. Needs at least two classes.
pub fn normalize_mcc(mcc: &MccInstance) -> Result<MccInstance, ReductionError> {
    let k = mcc.k();
    if k < 2 {
        return Err(ReductionError::KTooSmall { k });
    }
    let target = mcc.classes.iter().map(Vec::len).max().unwrap();
    let mut next = mcc.n();
    let mut classes = mcc.classes.clone();
    for class in &mut classes {
        while class.len() < target {
            class.push(next);
            next += 1;
        }
    }
    let graph = build_graph(next, mcc.graph.edges())?;
    MccInstance::new(graph, classes)
}

/// Components of the graph `edges` describes, minus the one holding
/// vertex 0. Empty when the graph is connected. Builders bridge each
/// returned component to the base one with a construction-specific edge.
pub(crate) fn satellite_components(
    n: usize,
    edges: &[(usize, usize, u64)],
) -> Result<Vec<Vec<usize>>, ReductionError> {
    let probe = build_graph(n, edges)?;
    let mut comps = probe.components();
    // Components are sorted by minimum vertex; vertex 0's component leads.
    comps.remove(0);
    Ok(comps)
}
