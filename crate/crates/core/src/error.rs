use thiserror::Error;

/// Problems found while reading a BDF automaton description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BdfError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: state {value} out of range for {n} states")]
    Range { line: usize, value: usize, n: usize },
    #[error("missing row `{0}`")]
    MissingRow(&'static str),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Bdf(#[from] BdfError),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("automaton cannot be standardized: {0}")]
    NotStandardizable(String),
    #[error("{what} exceeds the cap of {cap}")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("subgroup chain did not settle within {0} levels")]
    LevelCap(usize),
    #[error("automaton is not completely reachable")]
    NotCompletelyReachable,
    #[error("subset {0} is not reachable")]
    Unreachable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by a configured cap rather than by the input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. } | Error::LevelCap(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
