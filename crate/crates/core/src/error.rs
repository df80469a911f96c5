use thiserror::Error;

use crate::report::DiffReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: usize },

    #[error("multinomial parts sum to {sum}, expected {k}")]
    MultinomialParts { k: usize, sum: usize },

    #[error("tensor of order {order} applied to multiplicities summing to {sum}")]
    MultiplicityMismatch { order: usize, sum: usize },

    #[error("point {0} lies outside the positive cone")]
    OffCone(String),

    #[error("no tabulated value at point {0}")]
    MissingSample(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("hypothesis violated: {condition}")]
    HypothesisViolation {
        condition: String,
        report: Box<DiffReport>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
