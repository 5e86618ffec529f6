use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function evaluation produced NaN or infinity.
    #[error("non-finite value {value} at x = {at}")]
    NonFinite { at: f64, value: f64 },

    /// A conditional variance came out negative beyond rounding slack.
    #[error("model consistency: conditional variance {0} < 0 at date index {1}")]
    NegativeVariance(f64, usize),

    /// Lower bound exceeds upper bound.
    #[error("ordering violation: lower bound {lb} exceeds upper bound {ub}")]
    Ordering { lb: f64, ub: f64 },

    /// A simulated volume path averaged to zero.
    #[error("degenerate volume path: average volume is zero")]
    DegenerateVolume,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that stem from numerics rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::NegativeVariance(..)
                | Error::Ordering { .. }
                | Error::DegenerateVolume
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
