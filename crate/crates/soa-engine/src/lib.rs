//! Bounded small-object-argument machinery over the globular site.
//!
//! Everything here works with finite fragments: arity length, dimension,
//! term depth, and iteration count are all capped by [`FragmentBounds`], and
//! every pass records whether it genuinely converged or merely ran out of
//! budget.  Within such a fragment the crate builds sphere and disk
//! presentations, enumerates the admissible pairs they classify, adjoins
//! lifts one step at a time in free or unique flavor, and stacks the steps
//! into the three stage towers (`fc`, `ic`, `strict`) together with their
//! connecting inclusions.  Presentations and towers round-trip through a
//! canonical text form.

mod bounds;
mod error;
mod extend;
mod fileio;
mod morphism;
mod pairs;
mod sphere;
mod tower;

pub use bounds::FragmentBounds;
pub use error::EngineError;
pub use extend::{extend_one_step, fibrant_replace, ReplaceReport};
pub use fileio::{
    parse_presentation, read_tower, serialize_manifest, serialize_presentation, write_tower,
};
pub use morphism::TheoryMorphism;
pub use pairs::{admissible_pairs, AdmissiblePair};
pub use sphere::{disk, sphere, sphere_disk_inclusion, sphere_parts, SphereParts};
pub use tower::{build_tower, lookup_lift, stable_dim, StageReport, Tower, TowerMode};
