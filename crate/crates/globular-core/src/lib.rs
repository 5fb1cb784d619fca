//! Shapes for globular theories: tables of dimensions, their realizations as
//! finite pasting diagrams, and the dimension-preserving maps between them.
//!
//! A table of dimensions is an odd-length zigzag like `(1,0,1)`: peaks at the
//! even positions name the component cells of a pasting, valleys record the
//! dimension along which consecutive components are glued.  `(1)` is a single
//! arrow, `(1,0,1)` a composable pair of arrows, `(2,1,2)` two 2-cells
//! stacked along a shared arrow.  Realizing a table produces the concrete
//! globular set it denotes, with a stable canonical numbering of cells, and
//! `theta_hom` enumerates the strictly dimension-preserving maps between two
//! realizations.
//!
//! Everything downstream is parameterized by these shapes: theory generators
//! have a table as their arity, and terms over a table are interpreted in its
//! realization.

mod error;
mod realize;
mod table;
mod theta;

pub use error::GlobularError;
pub use realize::{CellExpr, CellId, PastingDiagram, Side};
pub use table::TableOfDimensions;
pub use theta::{theta_compose, theta_hom, ThetaMor};
