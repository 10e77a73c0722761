use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("operands live in different rings ({0} vs {1})")]
    DescriptorMismatch(String, String),
    #[error("variable `{0}` is not bound by the substitution")]
    UnboundVariable(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is singular (det = {0} is not a unit)")]
    SingularForm(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix failed T^t psi T = psi at ({row}, {col})")]
    CertificationFailure { row: usize, col: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("u is not isotropic")]
    NotIsotropic,
    #[error("B(u, v) is not zero")]
    NotOrthogonalPair,
    #[error("r is not q(v)")]
    WrongR,
    #[error("factors belong to different ambient spaces")]
    SpaceMismatch,
    #[error("hom matrices have different directions")]
    DirectionMismatch,

    #[error("index clash: {0}")]
    IndexClash(String),
    #[error("scalar hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("hyperbolic rank {got} is too small (need at least {need})")]
    RankTooSmall { need: usize, got: usize },
    #[error("s-power budget {d} is below the minimum {d_min}")]
    BudgetTooSmall { d: u32, d_min: u32 },
    #[error("rewrite produced a different matrix at ({row}, {col}): {lhs} vs {rhs}")]
    RewriteFailure {
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    #[error("pairing {0} is not a unit")]
    NonUnitPairing(String),
    #[error("word does not specialize to the identity at 0")]
    NotNormalized,
    #[error("factor is not a coordinate generator")]
    NotCoordinate,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("shares do not sum to one (sum = {0})")]
    PartitionOfUnityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
