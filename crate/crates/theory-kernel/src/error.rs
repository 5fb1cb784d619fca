use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("globular structure error: {0}")]
    Globular(#[from] globular_core::GlobularError),

    #[error("no cell {cell} in the realization of {table}")]
    UnknownCell { table: String, cell: String },

    #[error("no generator {hash} in this presentation")]
    UnknownGenerator { hash: String },

    #[error("generator takes {expected} components, got {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("component {position} has dimension {found}, peak needs {expected}")]
    DimensionMismatch {
        position: usize,
        expected: u8,
        found: u8,
    },

    #[error("component {position} lives over a different table than the application context")]
    ContextMismatch { position: usize },

    #[error("components do not glue at valley {valley_index}: {lhs} != {rhs}")]
    ValleyMismatch {
        valley_index: usize,
        lhs: String,
        rhs: String,
    },

    #[error("generator boundary is malformed: {reason}")]
    BadBoundary { reason: String },

    #[error("generators can only be added to an open layer once layering has begun")]
    NoOpenLayer,

    #[error("a layer is already open")]
    LayerAlreadyOpen,

    #[error("no layer is open")]
    NoLayerOpen,

    #[error("parse error at line {line}, column {col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },

    #[error("stored hash {stated} does not match recomputed {computed} for a generator")]
    HashMismatch { stated: String, computed: String },
}
