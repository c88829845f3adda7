use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("member index {index} out of range for a set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("x = {x} lies outside the domain {domain}")]
    OutsideDomain { x: f64, domain: String },

    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },

    #[error("corrupted family table: h_{degree} = {norm} is not positive")]
    CorruptedNorm { degree: usize, norm: f64 },

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("invalid function set: {0}")]
    InvalidSet(String),

    #[error("node count {m} outside the supported range {min}..={max}")]
    NodeCountOutOfRange { m: usize, min: usize, max: usize },

    #[error("{m}-node rule has a weight outside f64 range at node {node}")]
    WeightUnderflow { m: usize, node: f64 },

    #[error("non-finite integrand value {value} at node {node}")]
    NonFiniteIntegrand { node: f64, value: f64 },

    #[error("quadrature budget exceeded: {m}^{d} = {points} grid points > {limit}")]
    BudgetExceeded {
        m: usize,
        d: usize,
        points: f64,
        limit: f64,
    },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("weight convention mismatch: {0}")]
    WeightMismatch(String),

    #[error("non-finite overlap entry ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("singular normalization: overlap matrix has rank {rank} < {n}; use the C-scaled evaluation")]
    SingularNormalization { rank: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cost guard: {0}")]
    CostGuard(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
