use crate::algebra::SignatureError;
use crate::scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("element is not polynomial in block {0} (radial factor present)")]
    NonPolynomial(String),
    #[error("degree bound violated: degree {degree} exceeds {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("harmonic projection is singular for this input")]
    SingularProjection,
    #[error("parameters outside the supported domain: {0}")]
    Domain(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
