use thiserror::Error;

use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("f must be nonconstant")]
    ConstantF,
    #[error("b-function has a non-rational factor {0}")]
    NonRationalRoots(String),
    #[error("certificate failed verification: {0}")]
    CertificateFailed(String),
    #[error("denominator vanishes at {0}")]
    DenominatorVanishes(Q),
    #[error("element is not in the Hodge piece: {0}")]
    NotInHodgePiece(String),
    #[error("zero element has no b-function")]
    ZeroElement,
    #[error("charts do not glue: {0}")]
    GluingFailure(String),
    #[error("flatness certificate failed: {0}")]
    FlatnessCertificateFailed(String),
    #[error("window incomplete: {0}")]
    WindowIncomplete(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
