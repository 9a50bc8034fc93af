use std::fmt;

/// Coarse classification of an [`Error`], cheap to copy into reports and
/// across the C boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    InvalidArgument,
    Singular,
    Domain,
    Breakdown,
    IterationLimit,
    Positivity,
    Unfilled,
    OutOfRange,
    Config,
    Io,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::InvalidArgument => "invalid-argument",
            ErrorKind::Singular => "singular",
            ErrorKind::Domain => "domain",
            ErrorKind::Breakdown => "breakdown",
            ErrorKind::IterationLimit => "iteration-limit",
            ErrorKind::Positivity => "positivity",
            ErrorKind::Unfilled => "unfilled",
            ErrorKind::OutOfRange => "out-of-range",
            ErrorKind::Config => "config",
            ErrorKind::Io => "io",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A denominator vanished: Möbius pole, coincident stencil coordinates,
    /// zero field value under division.
    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("scheme breakdown: {0}")]
    Breakdown(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    IterationLimit { iterations: usize, residual: f64 },

    #[error("non-positive value {value:e} where a strictly positive field is required")]
    Positivity { value: f64 },

    #[error("grid cell ({m}, {n}) is not filled")]
    Unfilled { m: usize, n: usize },

    #[error("index ({m}, {n}) out of range for a {rows}x{cols} grid")]
    OutOfRange {
        m: usize,
        n: usize,
        rows: usize,
        cols: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidArgument(_) => ErrorKind::InvalidArgument,
            Error::Singular(_) => ErrorKind::Singular,
            Error::Domain(_) => ErrorKind::Domain,
            Error::Breakdown(_) => ErrorKind::Breakdown,
            Error::IterationLimit { .. } => ErrorKind::IterationLimit,
            Error::Positivity { .. } => ErrorKind::Positivity,
            Error::Unfilled { .. } => ErrorKind::Unfilled,
            Error::OutOfRange { .. } => ErrorKind::OutOfRange,
            Error::Config(_) => ErrorKind::Config,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn singular(what: impl Into<String>) -> Self {
        Error::Singular(what.into())
    }

    pub(crate) fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidArgument(what.into())
    }

    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain(what.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejects a divisor whose magnitude is at most `tol`.
pub(crate) fn nonzero(value: f64, tol: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value.abs() <= tol {
        Err(Error::singular(format!("{what} = {value:e}")))
    } else {
        Ok(value)
    }
}
