use thiserror::Error;

use crate::format::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A backtracking search visited more nodes than it was allowed to.
    #[error("search budget of {budget} nodes exceeded in {search}")]
    BudgetExceeded { search: &'static str, budget: u64 },

    /// The iterative refinement did not find an ε-regular subspace within the
    /// allowed codimension. The last report is kept for inspection.
    #[error("codimension budget {max_codim} exceeded without reaching regularity")]
    CodimBudgetExceeded {
        max_codim: usize,
        last: Box<crate::regularity::RegularityReport>,
    },

    /// An argument did not satisfy the documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The dimension is above what the operation supports.
    #[error("dimension {n} exceeds the cap of {cap} for {op}")]
    DimensionTooLarge { op: &'static str, n: usize, cap: usize },

    /// A mathematical guarantee was observed to fail. This indicates a bug
    /// in the implementation (or a false lemma) and must never be ignored.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalConsistency(msg.into())
    }

    /// Process exit code associated with this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::DimensionTooLarge { .. } | Error::Parse(_) => 2,
            Error::BudgetExceeded { .. } | Error::CodimBudgetExceeded { .. } => 3,
            Error::InternalConsistency(_) => 4,
        }
    }
}

pub(crate) fn check_dim(op: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DimensionTooLarge { op, n, cap })
    } else {
        Ok(())
    }
}
