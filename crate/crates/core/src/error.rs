use alloc::string::String;
use core::fmt;

/// Failure modes shared by every evaluation routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the region where the requested quantity is
    /// defined (divergent integral, invalid order, non-finite sample, ...).
    Domain(String),
    /// The error target was not reached within the subdivision budget.
    Convergence {
        subdivisions: usize,
        estimate: f64,
        target: f64,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence {
                subdivisions,
                estimate,
                target,
            } => write!(
                f,
                "no convergence after {subdivisions} subdivisions \
                 (error estimate {estimate:e}, target {target:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
