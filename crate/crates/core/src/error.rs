use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the operation's domain.
    Parameter(String),
    /// The request is well formed but the operation does not apply
    /// (for example an approximate qubit plan for a maximally mixed state).
    NotApplicable(String),
    /// The request asks for something this crate deliberately does not model.
    Unsupported(String),
    /// A channel or state contract was violated by the caller.
    Contract(String),
    /// A dense computation would exceed the configured size cap.
    Resource(String),
    /// The dense reference disagrees with the expected block structure.
    OracleMismatch(String),
    /// An iterative numerical routine failed to converge.
    Convergence(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(m) => write!(f, "invalid parameter: {m}"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Contract(m) => write!(f, "contract violation: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
            Error::OracleMismatch(m) => write!(f, "oracle mismatch: {m}"),
            Error::Convergence(m) => write!(f, "no convergence: {m}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! param_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Parameter(alloc::format!($($arg)*))
    };
}
pub(crate) use param_err;
