use thiserror::Error;

/// Errors surfaced by board operations, parsing, and solver entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed position text; `line` and `col` are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// A precondition violation by the caller.
    #[error("{0}")]
    Usage(String),
    /// A guaranteed-impossible situation was reached; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
