use thiserror::Error;

use crate::algebra::MAX_VARS;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("{0} variables requested; at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error("element is not homogeneous with respect to the module grading")]
    NotHomogeneous,
    #[error("free resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),
    #[error("module is not of finite length (Krull dimension {0})")]
    NotFiniteLength(i64),
    #[error("degree cap {0} exceeded")]
    DegreeCapExceeded(i64),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} coincide; the defining polynomial must be reduced")]
    DuplicateHyperplane(usize, usize),
    #[error("hyperplane {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("flat is not in the intersection lattice")]
    FlatNotInLattice,
    #[error("operation needs a nonempty central arrangement")]
    EmptyArrangement,
    #[error("operation needs a central arrangement")]
    NotCentral,
    #[error("Poincaré polynomial is not divisible by (1 + t)")]
    InexactDivision,
    #[error("non-free locus is not zero-dimensional: Ext^1 has Krull dimension {cone_dim} over the cone")]
    NonIsolatedNonFreeLocus { cone_dim: i64 },
    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { min: i64, got: i64 },
    #[error("independent computations disagree: {0}")]
    CrossCheckMismatch(String),
    #[error("hypotheses not certified: {0}")]
    Hypothesis(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
