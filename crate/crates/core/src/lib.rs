//! Planar diagram calculus for the affine A fusion categories and their
//! source models.

pub mod classify;
pub mod cyclotomic;
pub mod diagram;
pub mod equiv;
pub mod error;
pub mod evaluate;
pub mod fusion;
pub mod labeling;
pub mod relations;
pub mod testgen;
pub mod theory;

pub use cyclotomic::CycloScalar;
pub use diagram::{Diagram, Morphism};
pub use error::{Error, Result};
pub use theory::{BoxKind, Family, Label, Root, Theory};
