//! Exact arithmetic over F_p, noncommutative polynomials and semi-free DGAs.

mod dga;
mod field;
mod morphism;
mod poly;

pub use dga::{is_valid_name, Dga, Generator, ValidationReport, Violation};
pub use field::{Field, Scalar};
pub use morphism::DgaMorphism;
pub use poly::{GenId, Poly, Word};
