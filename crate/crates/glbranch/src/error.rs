use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// `SymmetryViolation`, `DualityViolation` and `NonUnique` never signal bad
/// input: they mean an internal law was broken and the engine has a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("segments {0} and {1} are not linked")]
    NotLinked(String, String),
    #[error("segment {0} is not present in {1}")]
    NotPresent(String, String),
    #[error("removal of {0} is inapplicable to {1}")]
    Inapplicable(String, String),
    #[error("derivative vanishes: {0}")]
    VanishingDerivative(String),
    #[error("triple is not strongly commutative: {0}")]
    NotCommutative(String),
    #[error("rank mismatch: expected rank {expected}, found {found}")]
    RankMismatch { expected: u64, found: u64 },
    #[error("symmetry violated for {0} / {1}")]
    SymmetryViolation(String, String),
    #[error("duality violated for {0} / {1}")]
    DualityViolation(String, String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("non-unique result: {0}")]
    NonUnique(String),
    #[error("line {name} already registered with size {existing}, not {requested}")]
    LineConflict { name: String, existing: u32, requested: u32 },
    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Parse { pos: usize, expected: String, found: String },
}

pub type Result<T> = std::result::Result<T, Error>;
