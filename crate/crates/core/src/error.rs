use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("Seifert matrix has determinant {det}, not a fibered presentation")]
    NotFibered { det: BigInt },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entry {0} does not fit a gluing coefficient")]
    EntryOverflow(BigInt),
    #[error("band index {index} out of range for a tree with {mu} bands")]
    BandIndex { index: usize, mu: usize },
    #[error("band {index} is still plumbed over by band {by}")]
    NotRemovable { index: usize, by: usize },
    #[error("knot plumbing crossing coefficient must be -1 or +1, got {0}")]
    CrossingCoefficient(i64),
    #[error("tree has {mu} bands, over the cap of {cap}")]
    CapExceeded { mu: usize, cap: usize },
    #[error("invalid manifold model: {0}")]
    InvalidManifold(String),
    #[error("plane-field classes live on different manifolds ({0} vs {1})")]
    ManifoldMismatch(String, String),
    #[error("H1 element has {got} coefficients, model has {expected} factors")]
    H1Length { expected: usize, got: usize },
    #[error("plane fields are not homologous")]
    NotHomologous,
    #[error("homologous plane fields with different Euler classes")]
    EulerMismatch,
    #[error("class (mu={mu}, lambda={lambda}) has no decomposition over the knot basis: mu - 2*lambda is odd")]
    ParityObstruction { mu: i64, lambda: i64 },
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for HopfError {
    fn from(e: serde_json::Error) -> Self {
        HopfError::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HopfError>;
