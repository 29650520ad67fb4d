//! Exact computations with finite-length modules over quiver algebras with
//! relations over small prime fields: Hom spaces, decompositions, Auslander-Reiten
//! translates, Gabriel-Roiter measures and submodule-closed subcategories.

// index loops read closer to the matrix formulas
#![allow(clippy::needless_range_loop)]

pub mod artrans;
pub mod builtin;
pub mod caps;
pub mod error;
pub mod explorer;
pub mod ffla;
pub mod grmeasure;
pub mod presentation;
pub mod registry;
pub mod repcore;
pub mod tame;

pub use caps::Caps;
pub use error::{Error, Result};
pub use ffla::{Field, Matrix, Subspace};
pub use grmeasure::GRMeasure;
pub use presentation::{injective, projective, simple, AlgebraPresentation, Quiver, Relation};
pub use repcore::{direct_sum, Morphism, Representation, Submodule};
