//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by structure parsing, validation, and the exact pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("component index {index} out of range for n = {n}")]
    IndexOutOfRange { index: u32, n: usize },

    #[error("k-of gate requires 1 <= k <= {m}, got k = {k}")]
    InvalidKOf { k: usize, m: usize },

    #[error("component count must be at least 1")]
    EmptySystem,

    #[error("component count {n} exceeds the supported maximum of {max}")]
    TooManyComponents { n: usize, max: usize },

    #[error("component count {n} exceeds the enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("gate requires at least two operands")]
    TooFewOperands,

    #[error("path set list is empty")]
    NoPathSets,

    #[error("path set #{index} is empty")]
    EmptyPathSet { index: usize },

    #[error("path sets are not minimal: {outer:?} contains {inner:?}")]
    NonMinimalPathSets { inner: Vec<u32>, outer: Vec<u32> },

    #[error("truth table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },

    #[error("structure is not semicoherent: {0}")]
    NotSemicoherent(String),

    #[error("expansion exceeded the guard of {limit} live terms")]
    TermExplosion { limit: usize },

    #[error("polynomial degree {degree} exceeds n = {n}")]
    DegreeExceedsN { degree: usize, n: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value map is missing subset {subset:?}")]
    MissingSubset { subset: Vec<u32> },

    #[error("invalid tail signature: {0}")]
    InvalidTailSignature(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid quality table: {0}")]
    InvalidQualityTable(String),

    #[error("modular system has {got} modules but the organizing structure has {expected} slots")]
    ModuleCountMismatch { expected: usize, got: usize },

    #[error("module count {r} does not divide component count {n}")]
    NotDivisible { n: usize, r: usize },

    #[error("invalid relabeling: {0}")]
    InvalidRelabel(String),

    #[error("invalid rational literal {literal:?}")]
    BadRational { literal: String },

    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),
}

impl Error {
    /// True for errors raised while reading textual input, as opposed to
    /// semantic validation of well-formed input.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::BadRational { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
