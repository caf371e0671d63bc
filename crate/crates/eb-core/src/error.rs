use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// `Input` covers malformed or out-of-domain arguments, `Resource` covers
/// configured caps (table orders, oracle state counts), and `Budget` covers
/// an exhausted search depth budget. `Property` is reserved for verified
/// mathematical invariants failing at runtime, which always indicates a bug
/// in the caller's tables rather than in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("depth budget {budget} exhausted: certified lower bound {bound}")]
    Budget { budget: usize, bound: usize },

    #[error("property violation: {0}")]
    Property(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn property(msg: impl Into<String>) -> Self {
        Error::Property(msg.into())
    }

    /// Prefix the message with where the error arose, keeping the kind.
    pub fn with_context(self, ctx: impl Into<String>) -> Self {
        let ctx = ctx.into();
        match self {
            Error::Input(m) => Error::Input(format!("{ctx}: {m}")),
            Error::Resource(m) => Error::Resource(format!("{ctx}: {m}")),
            Error::Property(m) => Error::Property(format!("{ctx}: {m}")),
            budget @ Error::Budget { .. } => budget,
        }
    }
}
