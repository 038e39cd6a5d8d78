use thiserror::Error;

/// Broad classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The inputs are outside the domain of the operation.
    Domain,
    /// A configured work budget (enumeration size, vector length) was exceeded.
    Resource,
    /// A result failed a self-check. This always indicates a bug.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} must be positive")]
    NotPositive { name: &'static str },

    #[error("{value} is beyond the factorization limit of {limit}")]
    FactorizationLimit { value: u128, limit: u64 },

    #[error("the generalized gcd (0, 0)_s is undefined")]
    BothZero,

    #[error("restriction t[{index}] = {value} does not divide n = {n}")]
    RestrictionNotDivisor { index: usize, value: u64, n: u64 },

    #[error("{d} does not divide n = {n}")]
    NotDivisor { d: u64, n: u64 },

    #[error("{what} needs {required} units of work but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExceeded { .. } => ErrorKind::Resource,
            Error::Inconsistent(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
