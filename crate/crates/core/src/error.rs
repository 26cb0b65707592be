use thiserror::Error;

/// Errors raised by the library. Every operation validates its own
/// preconditions and reports the first one it finds violated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("pole of zeta at s = 1")]
    Pole,

    #[error("line {line}: cannot parse {text:?}")]
    Parse { line: usize, text: String },

    #[error("ordinates not strictly ascending: {prev} followed by {next}")]
    Order { prev: f64, next: f64 },

    #[error("no sign change between log T = {lo} and log T = {hi}")]
    Bracket { lo: f64, hi: f64 },

    #[error("bisection did not converge in {iterations} iterations")]
    Convergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
