use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("base graph must be 3-regular: {0}")]
    NotCubic(String),

    #[error("twist parities differ; no parity-preserving isomorphism exists")]
    ParityMismatch,

    #[error("partial permutation is not harmonious; encoding undefined")]
    NotHarmonious,

    #[error("system admits a width-{width} refutation; signs are ill-defined")]
    IllDefinedGamma { width: usize },

    #[error("sign contradiction: {0}")]
    SignContradiction(String),

    #[error("domain size {dom} exceeds level {level}")]
    LevelExceeded { dom: usize, level: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("snapshot error: {0}")]
    Snapshot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
