//! Involutions of spherical 3-manifolds: exact group models, extension
//! computation, Seifert data of the quotients and a brute-force oracle.

pub mod classify;
pub mod exactmath;
pub mod families;
pub mod involutions;
pub mod oracle;
pub mod quintuple;
pub mod s3groups;
pub mod seifert;
pub mod tablegen;
pub mod tables;
pub mod verify;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("conductor mismatch: {0}")]
    ConductorMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unclassified group: {0}")]
    Unclassified(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("refibration required: {0}")]
    RefibrationRequired(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
