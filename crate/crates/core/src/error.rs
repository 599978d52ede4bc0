use thiserror::Error;

/// Errors raised by constructions, searches and the text formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point index {index} out of range for a space with {size} points")]
    OutOfRange { index: usize, size: usize },

    #[error("relation is not a preorder: {0}")]
    NotPreorder(String),

    #[error("subset is not open: point {point} is a member but {missing} in its minimal open set is not")]
    NotOpen { point: usize, missing: usize },

    #[error(
        "map is discontinuous: reach({x}, {x2}) holds in the source but reach({fx}, {fx2}) fails in the target"
    )]
    Discontinuous {
        x: usize,
        x2: usize,
        fx: usize,
        fx2: usize,
    },

    #[error("assignment has {got} entries but the source has {expected} points")]
    AssignmentLength { expected: usize, got: usize },

    #[error("{what} would have {size} points, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("search budget of {limit} nodes exhausted")]
    BudgetExhausted { limit: u64 },

    #[error("incompatible maps: {0}")]
    Mismatch(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
