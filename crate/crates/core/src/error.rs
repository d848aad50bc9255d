use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{p} is not an odd prime: {reason}")]
    InvalidModulus { p: u64, reason: &'static str },

    #[error("p = {p} exceeds the configured bound {bound}")]
    BoundExceeded { p: u64, bound: u64 },

    #[error("singular curve: {0}")]
    SingularCurve(String),

    #[error("{0} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)")]
    NotDiscriminant(i64),

    #[error("no character of order 4 modulo {0}: requires q = 1 mod 4")]
    NoQuarticCharacter(u64),

    #[error("{what} unavailable: {reason}")]
    Unavailable { what: String, reason: String },

    #[error("trace formula at p = {p} produced the non-integer {value}")]
    NonIntegralTrace { p: u64, value: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown suite `{id}`; valid ids: {}", valid.join(", "))]
    UnknownSuite { id: String, valid: Vec<&'static str> },

    #[error("config: {0}")]
    Config(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("output: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
