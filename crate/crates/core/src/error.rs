use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is degenerate")]
    DegenerateGram,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("operator is not skew-adjoint for the inner product")]
    NotSkew,
    #[error("vectors are linearly dependent and do not span a plane")]
    Degenerate,
    #[error("plane is not spacelike (gram determinant {0})")]
    NotSpacelike(String),
    #[error("operator rank {0} is outside the supported set {{0, 2}}")]
    UnsupportedRank(usize),
    #[error("nilpotent rank-2 operator with non-vanishing cube")]
    CubeNotZero,
    #[error("linear map is not self-adjoint")]
    NotSelfAdjoint,
    #[error("linear map kernel contains a spacelike vector")]
    NotAdmissible,
    #[error("map is not of constant rank 2: {0}")]
    NotRankTwo(String),
    #[error("domain has q = {0}; reconstruction needs q >= 5")]
    DomainTooSmall(usize),
    #[error("range intersection has dimension {0}, expected a line")]
    DegenerateLine(usize),
    #[error("line representative is not in the expected span")]
    SpanSolveFailed,
    #[error("could not build a spanning family of spacelike vectors")]
    SpanningFamilyFailed,
    #[error("reconstructed tensor does not reproduce the input")]
    VerificationFailed,
    #[error("normal vector is null at the requested point")]
    DegeneratePoint,
    #[error("no sample satisfied the constraints: {0}")]
    Unsatisfiable(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
