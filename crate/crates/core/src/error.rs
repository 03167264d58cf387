use thiserror::Error;

/// Failure modes shared by every module.
///
/// `exit_class` groups them the way the command-line front end reports them.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("convergence condition fails at slot {slot}: {detail}")]
    Convergence { slot: usize, detail: String },
    #[error("enumeration budget exceeded: {needed} monic polynomials needed, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("insufficient margin: {equations} digit equations for {unknowns} unknowns (need unknowns + {margin})")]
    Margin {
        equations: i64,
        unknowns: usize,
        margin: usize,
    },
    #[error("mixed precisions in value vector: {0}")]
    MixedPrecision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot resolve: {0}")]
    Resolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    Resource,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Budget { .. } | Error::Margin { .. } | Error::Resolution(_) => {
                ErrorClass::Resource
            }
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
