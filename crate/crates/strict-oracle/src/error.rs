use soa_engine::EngineError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("closed-form counts cover tables of height at most 1, got {table} of height {height}")]
    Height { table: String, height: u8 },

    #[error("the one-skeleton of {table} is not a tree")]
    NotATree { table: String },

    #[error("{table} has no edge {edge}")]
    UnknownEdge { table: String, edge: u8 },

    #[error("letter {position} starts at {found} but the walk stands at {expected}")]
    NotComposable {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("a {stages}-stage strict tower is only final below dimension {stable}, asked for {dim}")]
    Unstable { dim: u8, stages: usize, stable: u8 },

    #[error("the closed form describes strict towers, got mode {mode}")]
    Mode { mode: String },

    #[error(transparent)]
    Engine(#[from] EngineError),
}
