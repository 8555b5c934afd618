use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate paper_id {paper_id:?} (first on line {first_line}, again on line {second_line})")]
    DuplicatePaperId {
        paper_id: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("no papers")]
    NoPapers,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("inverted year range {from}..={to}")]
    InvertedRange { from: i32, to: i32 },

    #[error("oracle input too large: {what} = {actual} exceeds cap {cap}")]
    OracleCap {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("infeasible synthetic configuration: {0}")]
    Infeasible(String),

    #[error("cannot serialize: {0}")]
    Serialize(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
