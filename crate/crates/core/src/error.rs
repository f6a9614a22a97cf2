use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The CLI maps every variant onto an exit code with [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed LP instance: {0}")]
    MalformedInstance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable index out of range at position {pos}: {name} (n = {n})")]
    IndexOutOfRange { pos: usize, name: String, n: usize },

    #[error("weight matrix is not admissible: {0}")]
    NotAdmissible(String),

    #[error("polynomial is not invariant: monomial {monomial} has weight {weight:?}")]
    NonInvariant { monomial: String, weight: Vec<i64> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("budget exceeded: {needed} subsets required, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

impl Error {
    /// 2 for validation failures, 3 for refused or unsupported requests.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) | Error::BudgetExceeded { .. } | Error::NotAdmissible(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
