use thiserror::Error;

use crate::algebra::Elem;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("associativity fails: ({x}*{y})*{z} != {x}*({y}*{z})")]
    AssociativityViolation { x: Elem, y: Elem, z: Elem },
    #[error("malformed table: {0}")]
    Range(String),
    #[error("J-class {0} is not regular")]
    NotRegular(usize),
    #[error("J-class {0} is not maximal")]
    NotMaximal(usize),
    #[error("partition is not a congruence: {0}")]
    InvalidCongruence(String),
    #[error("semigroup of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("unsupported variety `{0}`")]
    UnsupportedVariety(String),
    #[error("expected a monoid")]
    NotAMonoid,
    #[error("semigroup is not in {0}")]
    NotInVariety(&'static str),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("DFA is not minimal: states {0} and {1} are equivalent")]
    NotMinimal(usize, usize),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("key {key} outside 1..={span}")]
    KeyRange { key: usize, span: usize },
    #[error("keys must be strictly increasing (saw {0} after {1})")]
    KeyOrder(usize, usize),
    #[error("key {0} already present")]
    DuplicateKey(usize),
    #[error("key {0} not present")]
    MissingKey(usize),
    #[error("position {pos} out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(String),
    #[error("tuple arity mismatch: expected {expected}, got {got}")]
    TupleArity { expected: usize, got: usize },
    #[error("no projection for inner value {0}")]
    MissingProjection(Elem),
    #[error("witnesses do not separate U1 in either orientation")]
    NotAWitness,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unknown engine `{0}`")]
    UnknownEngine(String),
    #[error("operation not supported by engine `{engine}`: {op}")]
    Unsupported { engine: String, op: &'static str },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
