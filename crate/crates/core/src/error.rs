use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid generating set: {0}")]
    InvalidGeneratingSet(String),

    #[error("generating set does not generate Z^{dim} (lattice index {index})")]
    GenerationFailure { dim: usize, index: String },

    #[error("convex hull is not full-dimensional (rank {rank} in dimension {dim})")]
    Degenerate { rank: usize, dim: usize },

    #[error("face subgroup has rank {rank} < {dim}; index is infinite")]
    RankDeficient { rank: usize, dim: usize },

    #[error("ray sample has {len} points, at least {needed} are needed to test stabilization")]
    InsufficientSample { len: usize, needed: usize },

    #[error("translated window is empty")]
    WindowExhausted,

    #[error("value of g missing at {0:?}; ball not covered")]
    InsufficientData(Vec<i64>),

    #[error("search radius {radius} exhausted before reaching tolerance 1/{k}")]
    SearchBudget { radius: i64, k: usize },

    #[error("busemann value mismatch at {point:?}: window has {found}, support functional gives {expected}")]
    BusemannMismatch {
        point: Vec<i64>,
        found: String,
        expected: String,
    },

    #[error("no witness in S for nonconstancy of phi at {0:?}")]
    NoWitness(Vec<i64>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("psi is constant on the orbit for coset representative {0:?}")]
    ConstantPsi(Vec<i64>),

    #[error("elements carry different cocycles")]
    CocycleMismatch,

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("empty facet list")]
    NoFacets,

    #[error("exponent {0} outside the regime (1/2, 1]")]
    OutOfRegime(f64),

    #[error("boundary words are equal; nothing to separate")]
    NoSeparation,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
