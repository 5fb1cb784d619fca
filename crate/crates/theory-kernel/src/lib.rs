//! Presentations of globular theories.
//!
//! A presentation is a set of generators over tables of dimensions together
//! with the terms they span.  Terms are interned per presentation, carry
//! their boundaries, and can be enumerated exhaustively by weight (the
//! number of generator applications).  A presentation is either weak, where
//! equality is syntactic, or strict, where a congruence closes the store
//! under argument replacement, substitution stability, and collapse of
//! parallel cells over tree-shaped contexts.

mod congruence;
mod enumerate;
mod error;
mod generator;
mod parse;
mod term;

pub use congruence::SaturationReport;
pub use error::KernelError;
pub use generator::{Flavor, GenId, GenIdx, Generator};
pub use parse::parse_term;
pub use term::{
    ArityId, Head, Layer, LayerStatus, Presentation, TermId, TermNode, TheoryMode,
};
