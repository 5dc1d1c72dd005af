use thiserror::Error;

/// Library-wide error type.
///
/// `Domain`-flavoured variants describe invalid inputs or requests that the
/// mathematics cannot satisfy; `Resource`-flavoured ones mean a configurable
/// budget ran out before an answer was reached.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("expected a coherent matching field")]
    NotCoherent,

    #[error("weight matrix does not induce a unique minimal ordering on subset {}", fmt_subset(.subset))]
    WeightTie { subset: Vec<usize> },

    #[error("no tuple supplied for subset {}", fmt_subset(.subset))]
    MissingTuple { subset: Vec<usize> },

    #[error("more than one tuple supplied for subset {}", fmt_subset(.subset))]
    DuplicateTuple { subset: Vec<usize> },

    #[error("tuple ({}) is not an ordering of a valid subset of 1..={n}", fmt_tuple(.tuple))]
    MalformedTuple { tuple: Vec<usize>, n: usize },

    #[error("invalid grades {grades:?} for n = {n}: grades must be strictly increasing and lie in 1..=n")]
    InvalidGrades { grades: Vec<usize>, n: usize },

    #[error("({}) is not a permutation of 1..={n}", fmt_tuple(.perm))]
    NotPermutation { perm: Vec<usize>, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a polytope with integral points")]
    NonIntegralPolytope,

    #[error("lattice point enumeration for dilate {dilate} needs ~{estimate} candidates, over the budget of {budget}")]
    EnumerationBudget {
        dilate: u32,
        estimate: u128,
        budget: u128,
    },

    #[error("Groebner computation exceeded the S-pair budget of {budget}")]
    PairBudget { budget: usize },

    #[error("refusing to eliminate onto {requested} target variables (cap {cap})")]
    TooManyTargetVariables { requested: usize, cap: usize },

    #[error("SAGBI basis incomplete at degree cap {cap}")]
    SagbiIncomplete { cap: u32 },

    #[error("matroid ground set has {elements} elements, over the enumeration cap of {cap}")]
    GroundSetTooLarge { elements: usize, cap: usize },

    #[error("operation is defined for Grassmannian matching fields only")]
    NotGrassmannian,

    #[error("tope field does not satisfy the linkage property")]
    NotLinkage,

    #[error("no subgraph with the requested degrees in the union forest of subset {}", fmt_subset(.subset))]
    AmalgamationNoSubgraph { subset: Vec<usize> },

    #[error("more than one subgraph with the requested degrees in the union forest of subset {}", fmt_subset(.subset))]
    AmalgamationNonUnique { subset: Vec<usize> },

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by an exhausted resource budget rather than by
    /// the input itself.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBudget { .. }
                | Error::PairBudget { .. }
                | Error::TooManyTargetVariables { .. }
                | Error::SagbiIncomplete { .. }
                | Error::GroundSetTooLarge { .. }
        )
    }
}

fn fmt_subset(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn fmt_tuple(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

/// Budgets for the potentially expensive computations. The defaults are high
/// enough for every worked example; callers (and the CLI via environment
/// variables) can tighten or relax them.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum number of S-pair reductions per Groebner basis run.
    pub pair_budget: usize,
    /// Maximum number of candidate points enumerated when counting lattice
    /// points of a dilated polytope.
    pub enum_budget: u128,
    /// SAGBI construction stops when a candidate generator would exceed this
    /// total degree in the matrix variables.
    pub degree_cap: u32,
    /// Refuse eliminations onto more target variables than this.
    pub elimination_cap: usize,
    /// Refuse basis/circuit enumeration on matroids with more ground
    /// elements than this.
    pub matroid_ground_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pair_budget: 1_000_000,
            enum_budget: 10_000_000,
            degree_cap: 12,
            elimination_cap: 35,
            matroid_ground_cap: 20,
        }
    }
}
