use thiserror::Error;

use crate::dynkin::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: {reason}")]
    InvalidRank {
        family: Family,
        rank: usize,
        reason: String,
    },

    /// Two objects that must live on the same vertex set do not.
    #[error("domain mismatch: {0}")]
    Domain(String),

    /// A twisted form does not fit the diagram or the operation it was handed to.
    #[error("incompatible form: {0}")]
    IncompatibleForm(String),

    /// An input did not satisfy an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("factors[{factor}]: {message}")]
    Semantic { factor: usize, message: String },

    /// The brute-force oracle and a closed form disagree.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl Error {
    /// True for errors caused by malformed or invalid user input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Semantic { .. }
                | Error::InvalidRank { .. }
                | Error::IncompatibleForm(_)
        )
    }
}
