use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("GF({0}) is not a supported prime field (need a prime below 65536)")]
    InvalidField(u32),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("cannot compose: first path ends at {first_target}, second starts at {second_source}")]
    Composition { first_target: String, second_source: String },
    #[error("endpoint mismatch: ({0}) vs ({1})")]
    EndpointMismatch(String, String),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("reduction exceeded the step cap of {0}")]
    StepCap(usize),
    #[error("algebra does not look finite-dimensional: new standard monomials of length {0}")]
    NotFiniteDimensional(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("homotopy operator is not single-valued: {0}")]
    Ambiguous(String),
    #[error("degree {degree} is out of range (computed up to {bound})")]
    DegreeOutOfRange { degree: usize, bound: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("zero constant term in series denominator")]
    SeriesConstantTerm,
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
