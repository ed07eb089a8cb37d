use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("right multiplication operator is not nilpotent")]
    OperatorNotNilpotent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search bound must be at least 1")]
    InvalidBound,

    #[error("grading search box has {points} points, over the limit of {limit}")]
    SearchTooLarge { points: u128, limit: u128 },

    #[error("weight does not fit in a 64-bit integer")]
    WeightOverflow,

    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),

    #[error("malformed algebra file: {0}")]
    Format(String),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("{family}: dimension {dim} not allowed ({constraint})")]
    FamilyDimension {
        family: String,
        dim: usize,
        constraint: String,
    },

    #[error("{family}: parameter {param} violates constraint ({constraint})")]
    FamilyParameter {
        family: String,
        param: String,
        constraint: String,
    },

    #[error("{family}: unknown parameter {param:?}")]
    UnknownParameter { family: String, param: String },

    #[error("family {0} has no canonical maximum-length grading")]
    NoCanonicalGrading(String),

    #[error("invalid suite grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
