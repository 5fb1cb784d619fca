//! Closed-form answers for the strict fragment, independent of the engine.
//!
//! Over a height-at-most-one table the free strict theory is completely
//! understood: the realization is a tree, its free groupoid is codiscrete,
//! and every higher hom-set is counted by a short parallel-pair recursion.
//! This crate computes those answers directly from the realized diagram,
//! reduces words in the free groupoid by cancellation, and crosschecks the
//! engine's saturated class counts against the closed form.  Agreement ties
//! the congruence machinery to an argument that never touches it.

mod crosscheck;
mod error;
mod homs;
mod word;

pub use crosscheck::crosscheck_strict;
pub use error::OracleError;
pub use homs::strict_hom_count;
pub use word::{strict_reduce_word, SignedEdge};
