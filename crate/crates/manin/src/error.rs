use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("word of length {len} exceeds the word-length cap {cap}")]
    WordCap { len: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid preset: {0}")]
    Preset(String),
    #[error("rule `{0}` is not decreasing in the term order")]
    RuleOrder(String),
    #[error("system `{name}` failed the confluence self-test with {divergent} divergent critical pairs")]
    NotConfluent { name: String, divergent: usize },
    #[error("ring `{0}` has no q parameter")]
    NoQ(String),
    #[error("ring `{0}` carries no Poisson bracket")]
    NotPoisson(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown example matrix `{0}`")]
    UnknownExample(String),
}

impl Error {
    /// Errors caused by the request rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownCheck(_)
                | Error::UnknownExample(_)
                | Error::Preset(_)
                | Error::Precondition(_)
                | Error::Parse(_)
                | Error::Shape(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
