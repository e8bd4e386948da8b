use thiserror::Error;

/// Errors produced by the library. Every constructor validates its input, so
/// most variants describe a broken algebraic identity together with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("not a homomorphism: {reason}")]
    InvalidHom {
        reason: String,
        witness: Option<(usize, usize)>,
    },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("image is not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    /// A level (or cochain space) is larger than the configured budget.
    /// `achievable` is the largest degree that could still be computed.
    #[error("budget exceeded at level {level}: {required} simplices > budget {budget}")]
    BudgetExceeded {
        level: usize,
        required: String,
        budget: u64,
        achievable: Option<usize>,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A computed result failed one of its own consistency checks.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status: 1 for bad input, 2 for an exhausted budget,
    /// 3 for an internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
