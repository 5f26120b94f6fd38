use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the symbolic engine.
///
/// Basis indices in messages are 1-based, matching the `X1, X2, ...` naming.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("no derivative declared for generator `{generator}` with respect to `{variable}`")]
    MissingDerivative { generator: String, variable: String },

    #[error("negative power of non-Laurent variable `{0}`")]
    NotLaurent(String),

    #[error("cannot invert substituted value for Laurent variable `{0}`: image is not a monomial")]
    NonInvertibleSubstitution(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("antisymmetry fails at ({i},{j},{k}): c_{i}{j}^{k} != -c_{j}{i}^{k}")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("algebra `{name}` is not nilpotent: lower central series stabilizes at dimension {dim}")]
    NotNilpotent { name: String, dim: usize },

    #[error("grading violated: [{left},{right}] has a component outside weight {weight}")]
    Grading {
        left: usize,
        right: usize,
        weight: u32,
    },

    #[error("algebra `{0}` carries no stratification")]
    NotStratified(String),

    #[error("free-nilpotent algebras need at least two generators (got m = {0})")]
    TooFewGenerators(usize),

    #[error("target algebra has step {target} which exceeds the free algebra step {free}")]
    StepTooLarge { target: usize, free: usize },

    #[error("chart basis does not span the algebra (rank {rank} < {dim})")]
    ChartNotSpanning { rank: usize, dim: usize },

    #[error("chart conversion did not converge: the ordered basis is not adapted to the lower central series")]
    ChartNotAdapted,

    #[error("S does not Lie generate the algebra: closure has dimension {closure_dim} of {dim} (closure spanned by {closure})")]
    NotLieGenerating {
        closure_dim: usize,
        dim: usize,
        closure: String,
    },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("repeated sample time {0} in Vandermonde fit")]
    RepeatedSample(String),

    #[error("identity violated: {0}")]
    Violation(String),

    #[error("unknown name `{0}`")]
    Unknown(String),

    #[error("invalid input: {0}")]
    Input(String),
}
