use thiserror::Error;

use crate::code::SpecError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Bad construction parameters or operands from different structures.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("invalid code spec: {0}")]
    Validation(#[from] SpecError),

    /// A brute-force step would exceed its configured budget.
    #[error("{what} needs {required_bits:.2} bits of work, cap is {cap_bits:.2} bits")]
    Resource {
        what: &'static str,
        required_bits: f64,
        cap_bits: f64,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
