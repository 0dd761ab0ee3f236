use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position-tagged error from the text formats (`.dga` and `.map` files).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} is out of range")]
    GeneratorOutOfRange(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("name `{0}` is already in use")]
    NameCollision(String),
    #[error("characteristic mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("enumeration of {count} assignments exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },
    #[error("index {index} is out of range (there are {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("constant term does not cancel: {0}")]
    ConstantTerm(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
