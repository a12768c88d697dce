use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("part not playable: {0}")]
    NotPlayable(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("not a proper tail: {0}")]
    NotProperTail(String),
    #[error("inconsistent bars: {0}")]
    InconsistentBars(String),
    #[error("necklace {0} is not primitive")]
    NotPrimitive(String),
    #[error("invalid play sequence: {0}")]
    InvalidPlay(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("non-closing forest at root {root}: branch {branch} exceeds depth cap {depth_cap}")]
    NonClosing {
        root: usize,
        branch: String,
        depth_cap: usize,
    },
    #[error("singular linear system")]
    Singular,
    #[error("system is not reducible by substitution: {0}")]
    NotTriangular(String),
    #[error("capped: {what} exceeds the cap of {cap}")]
    Capped { what: String, cap: u64 },
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
