use soa_engine::EngineError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("law {law} expects indices {expected}, got [{got}]")]
    Indices {
        law: String,
        expected: &'static str,
        got: String,
    },

    #[error(transparent)]
    Engine(#[from] EngineError),
}
