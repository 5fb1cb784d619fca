use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobularError {
    #[error("invalid table of dimensions {entries:?}: {reason}")]
    InvalidTable { entries: Vec<u8>, reason: String },

    #[error("cannot parse table of dimensions from {input:?}: {reason}")]
    TableParse { input: String, reason: String },

    #[error("globularity violated in realization of {table} at {cell}")]
    GlobularityViolation { table: String, cell: String },

    #[error("map out of {table} does not preserve {boundary} of {cell}")]
    BoundaryViolation {
        table: String,
        cell: String,
        boundary: &'static str,
    },
}
