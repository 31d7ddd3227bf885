use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared {kind} `{name}` at byte {pos}")]
    Undeclared { kind: &'static str, name: String, pos: usize },
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("exponent evaluates to {0}, which is negative")]
    NegativeExponent(i64),
    #[error("polynomial has empty support")]
    EmptyPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("polynomial is not quasihomogeneous for the given weights")]
    NotQuasihomogeneous,
    #[error("weights {0:?} are not well-defined")]
    IllDefinedWeights(Vec<u64>),
    #[error("hypersurface of degree {degree} in P{weights:?} is not well-formed")]
    NotWellFormed { weights: Vec<u64>, degree: u64 },
    #[error("exponent {exponent} of variable {var} is not divisible by {q}")]
    Divisibility { var: usize, exponent: u32, q: u64 },
    #[error("non-integral reduction: {0}")]
    NonIntegral(String),
    #[error("complement index must be positive, got {0}")]
    NonPositiveIndex(i64),
    #[error("r_n is negative for n = {0}")]
    NegativeRn(u32),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("search bound {0} is out of range")]
    SearchBound(u32),
    #[error("dataset line {line}, field `{field}`: {msg}")]
    Schema { line: usize, field: String, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}
