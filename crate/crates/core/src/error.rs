use thiserror::Error;

use crate::category::{ArrId, ObjId, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object id {0}")]
    UnknownObject(ObjId),
    #[error("unknown arrow id {0}")]
    UnknownArrow(ArrId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(ArrId, ArrId),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("not a fibration: base arrow {alpha} has no cartesian lift into object {object}")]
    NotAFibration { alpha: ArrId, object: ObjId },
    #[error("invalid structure:\n{0}")]
    Invalid(ValidationReport),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
