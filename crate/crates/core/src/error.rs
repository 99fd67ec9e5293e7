use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("conductor {0} outside the supported range 1..={max}", max = crate::algebra::cyclotomic::MAX_CONDUCTOR)]
    ConductorOutOfRange(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("series constant term is not a unit")]
    NotInvertible,

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("group order {order} exceeds the isomorphism search cap {cap}")]
    SearchCapExceeded { order: u64, cap: u64 },

    #[error("overlattice is not integral: {0}")]
    NonIntegralOverlattice(String),

    #[error("not an isometry: matrix does not preserve the Gram matrix")]
    NotAnIsometry,

    #[error("bad order: {0}")]
    BadOrder(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("division identity violated: {0}")]
    DivisionIdentity(String),

    #[error("Galois-stability violated: {0}")]
    GaloisStability(String),

    #[error("unknown catalog entry: {0}")]
    UnknownCatalogEntry(String),
}
