use globular_core::TableOfDimensions;
use theory_kernel::KernelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("arity {table} has height {height}; a dimension-{dim} sphere needs height at most {limit}")]
    HeightViolation {
        table: TableOfDimensions,
        height: u8,
        dim: u8,
        limit: u8,
    },

    #[error("the composite boundary of {table} at dimension {dim} is not a parallel pair of cells")]
    SphereBoundary { table: TableOfDimensions, dim: u8 },

    #[error("no lift of ({arity}, {src}, {tgt}) exists within the current bounds; enlarge the fragment")]
    MissingLift {
        arity: TableOfDimensions,
        src: String,
        tgt: String,
    },

    #[error("generator {hash} is absent from the codomain")]
    MissingGenerator { hash: String },

    #[error("generator {hash} has no assigned image")]
    MissingImage { hash: String },

    #[error("image of {hash} does not preserve {what}: expected {expected}, found {found}")]
    ImageMismatch {
        hash: String,
        what: &'static str,
        expected: String,
        found: String,
    },

    #[error("a tower of {requested} stages needs max_dim at least {requested}, got {max_dim}")]
    StageCount { requested: u32, max_dim: u8 },

    #[error("line {line}: {reason}")]
    File { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Kernel(#[from] KernelError),
}
