use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input vectors are linearly dependent or do not span a full-rank sublattice")]
    SingularInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("angle denominator {den} does not divide conductor {conductor}")]
    ConductorMismatch { den: i64, conductor: u64 },
    #[error("division by zero")]
    DivisionByZero,

    #[error("zeta = 1 (sigma is an integer)")]
    ZetaIsOne,
    #[error("pole at a lattice point: the argument is identically zero")]
    PoleAtLatticePoint,
    #[error("residual pole: denominator {denominator} survived the fixed-point sum")]
    ResidualPole { denominator: String },
    #[error("granularity mismatch: {left} vs {right}")]
    GranularityMismatch { left: u32, right: u32 },

    #[error("rays of simplex {simplex:?} are linearly dependent")]
    DependentRays { simplex: Vec<usize> },
    #[error("no top-dimensional simplices")]
    EmptyTopDimension,
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("vector {vector:?} is not generic")]
    NotGeneric { vector: Vec<i64> },
    #[error("vector {vector:?} does not lie in the lattice spanned by every top cone")]
    NotInLatticeLv { vector: Vec<i64> },
    #[error("fan is not complete")]
    NotComplete,
    #[error("simplex {simplex:?} is not in the fan")]
    KeyNotInSigma { simplex: Vec<usize> },
    #[error("condition (P) fails: the top cones span different lattices")]
    ConditionPViolated,
    #[error("the first Chern class is not divisible by {0}")]
    NotDivisible(u64),
    #[error("point lies on the wall of ray {ray}")]
    PointOnWall { ray: usize },
    #[error("polytope offsets must be integers")]
    NonIntegralOffsets,
    #[error("point does not lie on the affine subspace cut out by the key rays")]
    NotInAffineSpace,

    #[error("window is not injective under the chosen vector")]
    WindowNotInjective,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("classification precondition fails: {0}")]
    PreconditionViolated(String),
    #[error("invalid bundle data: {0}")]
    InvalidBundle(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("sublattice has infinite index")]
    InfiniteIndex,
    #[error("lattice is not an overlattice of the standard lattice")]
    NotOverlattice,
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
