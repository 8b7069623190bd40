use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("input error: {0}")]
    Input(String),
    /// A configured cap (word length, iterate count, enumeration size) was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A structural property that theory guarantees failed to hold.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("word {word} has no factorization over the code")]
    NoFactorization { word: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
