//! Mechanical checks for the interchange laws between one-dimension
//! replacement steps, evaluated generator by generator on a bounded
//! fragment.
//!
//! Each replacement step `R_k` freely fills the admissible parallel pairs at
//! one dimension.  Two steps at different dimensions can be applied in
//! either order, and the comparison map between the two orders is resolved
//! here by sending every lift generator to the canonical filler of its
//! transported boundary.  [`verify_law`] then confirms, term for term, that
//! these canonical choices satisfy the expected equations: the unit
//! triangles, naturality of the swap, its two pentagons against the
//! multiplications, the hexagon between three swaps, the monad laws of a
//! single step, and the completability squares that splice the stagewise
//! multiplications into a tower.
//!
//! Everything is bounded by a [`soa_engine::FragmentBounds`], so a check is
//! a finite computation whose report lists one verdict per generator.

mod error;
mod laws;
mod morphisms;
mod objects;

pub use error::VerifyError;
pub use laws::{verify_law, GenVerdict, Law, LawCheckReport};
pub use morphisms::{
    build_lambda, build_mu, build_mu_hat, compose, kappa, lift_candidates, resolve_lifts,
    step_image, ComparisonMap,
};
pub use objects::TheoryStack;
