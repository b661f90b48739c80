use thiserror::Error;

pub type Result<T, E = FrobError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational literal `{0}`")]
    BadRational(String),

    #[error("{op}: dimension mismatch between {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix has {expected} entries by shape but {found} were supplied")]
    EntryCount { expected: usize, found: usize },

    #[error("category mismatch: {0}")]
    InstanceMismatch(String),

    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    #[error("{what} at {location} is not invertible")]
    NotInvertible { what: String, location: String },

    #[error("missing {component} component at {location}")]
    MissingComponent { component: String, location: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{map} is not well defined: relation {relation} is not annihilated (equivariance failure)")]
    WellDefinedness { map: String, relation: usize },
}
