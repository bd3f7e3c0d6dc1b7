use alloc::string::String;
use core::fmt;

/// Errors surfaced by constructors, solvers and the oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or system dimensions do not conform.
    Shape(String),
    /// A solve was requested for a system whose consistency test fails.
    Inconsistent(String),
    /// A singular-value cutoff could not separate the paired spectrum of a
    /// complex adjoint (counted complex rank was odd), or a structured
    /// inverse image failed its block-symmetry check.
    ToleranceFailure(String),
    /// The vectorized system is larger than the oracle's configured cap.
    CapExceeded { unknowns: usize, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Inconsistent(msg) => write!(f, "inconsistent system: {msg}"),
            Error::ToleranceFailure(msg) => write!(f, "tolerance failure: {msg}"),
            Error::CapExceeded { unknowns, cap } => {
                write!(f, "oracle cap exceeded: {unknowns} real unknowns > cap {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
