use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("direction {direction} out of range for dimension {dim}")]
    InvalidDirection { direction: usize, dim: usize },

    #[error("{what} must have bidegree {expected}, found {found}")]
    BidegreeMismatch {
        what: String,
        expected: String,
        found: String,
    },

    #[error("unsupported contraction: {0}")]
    UnsupportedContraction(String),

    #[error("unsupported Hodge operation: {0}")]
    UnsupportedStar(String),

    #[error("Killing field `{killing}` declares no contraction for field `{field}`")]
    MissingContraction { killing: String, field: String },

    #[error("complex field `{0}` has no declared conjugate partner")]
    UnpairedComplexField(String),

    #[error("form is not homogeneous in total degree: {0}")]
    Inhomogeneous(String),

    #[error("incomplete Hodge table: {0}")]
    IncompleteHodgeTable(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
