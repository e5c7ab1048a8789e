use std::fmt;
use std::io;
use std::path::PathBuf;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const SELFTEST_FAILED: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug)]
pub enum Error {
    /// Bad flags, spec fields or environment.
    Invalid(String),
    /// A library evaluation failed; `context` says where.
    Eval {
        context: String,
        source: gfn_core::Error,
    },
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Parse { .. } => exit::INVALID,
            Error::Eval { source, .. } if source.is_convergence() => exit::CONVERGENCE,
            Error::Eval { .. } => exit::INVALID,
            Error::Io { .. } => exit::IO,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::Eval { context, source } => write!(f, "{context}: {source}"),
            Error::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Error::Parse {
                path,
                line,
                message,
            } => {
                write!(f, "{}:{line}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Eval { source, .. } => Some(source),
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<gfn_core::Error> for Error {
    fn from(source: gfn_core::Error) -> Self {
        Error::Eval {
            context: "evaluation failed".into(),
            source,
        }
    }
}
