use thiserror::Error;

pub type Result<T> = std::result::Result<T, MorikitError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorikitError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate; radical spanned by {radical:?}")]
    Degenerate { radical: Vec<Vec<String>> },
    #[error("unknown standard lattice `{0}`")]
    UnknownLattice(String),
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("Picard lattice is not even")]
    NotEven,
    #[error("wrong signature: expected ({expected_pos},{expected_neg}), got ({pos},{neg})")]
    WrongSignature {
        expected_pos: usize,
        expected_neg: usize,
        pos: usize,
        neg: usize,
    },
    #[error("n must be at least 2, got {0}")]
    NTooSmall(String),
    #[error("Mukai vector is not primitive")]
    VNotPrimitive,
    #[error("(v,v) = {0} is not of the form 2n-2 with n >= 2")]
    BadVSquare(String),
    #[error("polarization is not orthogonal to v: (h,v) = {0}")]
    HNotOrthogonal(String),
    #[error("polarization has non-positive square {0}")]
    HNotPositive(String),
    #[error("budget must be positive")]
    BadBudget,
    #[error("coefficient bound must be at least 1")]
    BadCoeffBound,
    #[error("self-intersection must be negative for a reflection, got {0}")]
    NonNegativeSquare(String),
    #[error("polarization lies on the wall of class {0}; perturb h")]
    PolarizationOnWall(String),
    #[error("supplied polarization outside computed nef cone")]
    PolarizationOutsideNef,
    #[error("chamber decomposition supports divisor rank <= {max}, got {rank}")]
    UnsupportedRank { rank: usize, max: usize },
    #[error("{0}")]
    Input(String),
}
