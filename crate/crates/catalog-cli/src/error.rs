use std::io;

use distributive_verify::VerifyError;
use soa_engine::EngineError;
use strict_oracle::OracleError;
use theory_kernel::KernelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cell identification needs at least two built stages, this tower has {built}")]
    Stages { built: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}
