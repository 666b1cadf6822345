use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid admissible sequence: {0}")]
    InvalidAdmissibleSequence(String),
    #[error("algebra is not Nakayama")]
    NotNakayama,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("base field too small: {0}")]
    FieldTooSmall(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("expected an acyclic quiver without relations: {0}")]
    NotHereditaryPathAlgebra(String),
    #[error("{0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
