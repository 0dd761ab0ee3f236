//! Augmentation categories of semi-free DGAs over prime fields.
//!
//! Starting from a semi-free differential graded algebra (for instance the
//! Chekanov–Eliashberg algebra of a Legendrian knot), this crate enumerates
//! augmentations, computes bilinearised contact homology, builds the
//! A∞-category whose objects are the augmentations, and checks the functor
//! and duality statements that go with it.

pub mod ainfty;
pub mod algebra;
pub mod augment;
pub mod bilinear;
pub mod cli;
pub mod corpus;
pub mod duality;
pub mod engine;
pub mod error;
pub mod format;
pub mod functor;
pub mod linalg;
pub mod ncopy;

pub use algebra::{Dga, DgaMorphism, Field, Generator, Poly, Scalar, Word};
pub use augment::{enumerate_augmentations, Augmentation};
pub use error::{Error, ParseError, Result};
