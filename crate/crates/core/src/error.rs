use thiserror::Error;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomials live in different variable sets")]
    VariableMismatch,

    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("{0}")]
    Domain(String),

    #[error("invalid sign automorphism: {0}")]
    InvalidSign(String),

    #[error("inconsistent differential on page {page} at cell ({p}, {q}): {reason}")]
    InconsistentDifferential {
        page: u32,
        p: u32,
        q: u32,
        reason: String,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::ResourceLimit(_) => ErrorKind::Resource,
            _ => ErrorKind::Domain,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
