use thiserror::Error;

pub type Result<T> = std::result::Result<T, LieError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("word {0:?} is not a Lyndon word over an alphabet of size {1}")]
    NotLyndon(Vec<u16>, usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element belongs to a different algebra")]
    DomainMismatch,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dictionary is not a bijection of generators: {0}")]
    NotBijective(String),
    #[error("zero linear form")]
    ZeroForm,
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> LieError {
    LieError::InvalidParameter(msg.into())
}
