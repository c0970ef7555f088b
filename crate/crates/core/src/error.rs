use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A construction would exceed the configured vertex cap.
    #[error("graph too large: {what} ({actual} > {limit})")]
    Size {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A solver refused the instance because it is beyond its configured budget.
    #[error("capacity exceeded: {what} ({actual} > {limit}){hint}")]
    Capacity {
        what: &'static str,
        actual: u128,
        limit: u128,
        hint: &'static str,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
