use thiserror::Error;

use crate::validation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex `{0}` is not part of the graph")]
    UnknownVertex(String),

    #[error("vertex `{0}` is declared more than once")]
    DuplicateVertex(String),

    #[error("route {0} -> {1} is declared more than once")]
    DuplicateRoute(String, String),

    #[error("no route from `{0}` to `{1}`")]
    UnknownRoute(String, String),

    #[error("route {src} -> {dst} uses the missing edge {from} -> {to}")]
    MissingEdge {
        src: String,
        dst: String,
        from: String,
        to: String,
    },

    #[error("vertex `{0}` is a boundary vertex, expected an internal one")]
    NotInternal(String),

    #[error("vertex `{0}` is not a boundary vertex")]
    NotBoundary(String),

    #[error("vertex `{0}` lies on no route")]
    NotOnAnyRoute(String),

    #[error("invalid arguments: {0}")]
    InvalidArgument(String),

    #[error("routes {0} and {1} violate tree consistency")]
    TreeConsistency(String, String),

    #[error("graph failed validation with {} violation(s)", .0.violations.len())]
    InvalidGraph(ValidationReport),

    #[error("path correlation data failed validation with {} violation(s)", .0.violations.len())]
    InvalidPcd(ValidationReport),

    #[error("inconsistent path correlation data: {0}")]
    InconsistentPcd(String),

    #[error("edge {from} -> {to} read off with conflicting weights {first} and {second}")]
    WeightConflict {
        from: String,
        to: String,
        first: f64,
        second: f64,
    },

    #[error("symmetric mode requested on a graph without symmetric routing")]
    ModeMismatch,

    #[error("merging `{vertex}` would create a conflicting edge {from} -> {to}")]
    MergeConflict {
        vertex: String,
        from: String,
        to: String,
    },

    #[error("vertex `{0}` is not trivial")]
    NotTrivial(String),

    #[error("invalid separability partition for `{0}`: {1}")]
    InvalidPartition(String, String),

    #[error("boundary sets differ")]
    BoundaryMismatch,

    #[error("unsatisfiable generator parameters: {0}")]
    UnsatisfiableParams(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) => "UNKNOWN_VERTEX",
            Error::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            Error::DuplicateRoute(..) => "DUPLICATE_ROUTE",
            Error::UnknownRoute(..) => "UNKNOWN_ROUTE",
            Error::MissingEdge { .. } => "ROUTE_NOT_ON_EDGES",
            Error::NotInternal(_) => "NOT_INTERNAL",
            Error::NotBoundary(_) => "NOT_BOUNDARY",
            Error::NotOnAnyRoute(_) => "NOT_ON_ANY_ROUTE",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::TreeConsistency(..) => "TREE_CONSISTENCY_VIOLATION",
            Error::InvalidGraph(_) => "INVALID_GRAPH",
            Error::InvalidPcd(_) => "INVALID_PCD",
            Error::InconsistentPcd(_) => "INCONSISTENT_PCD",
            Error::WeightConflict { .. } => "WEIGHT_CONFLICT",
            Error::ModeMismatch => "MODE_MISMATCH",
            Error::MergeConflict { .. } => "MERGE_CONFLICT",
            Error::NotTrivial(_) => "NOT_TRIVIAL",
            Error::InvalidPartition(..) => "INVALID_PARTITION",
            Error::BoundaryMismatch => "BOUNDARY_MISMATCH",
            Error::UnsatisfiableParams(_) => "UNSATISFIABLE_PARAMS",
            Error::Json(_) => "SCHEMA_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
