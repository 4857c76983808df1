use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: bad rank, bad group string, out-of-range parameters.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    /// A quantity that must be an integer (or real) was not, to working precision.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series variable sets differ: {0}")]
    IncompatibleVariables(String),

    /// The argument of `tan` sits on a pole.
    #[error("tangent pole at {0}")]
    Pole(String),
}
