//! Catalog of named tower cells and the command-line front end.
//!
//! The library half identifies the conventionally named generators of a
//! built tower (identity, composition, inverse, associator, unitors) by
//! reconstructing their boundary pairs, and renders the result as a
//! tab-separated table.  The binary half dispatches the `build`, `verify`,
//! `catalog`, `hom`, and `pairs` subcommands over the engine, law checker,
//! and strict oracle.

mod catalog;
mod cli;
mod error;

pub use catalog::{identify_cells, Catalog, CatalogEntry, SlotOrder};
pub use cli::cli_dispatch;
pub use error::{CatalogError, CliError};
