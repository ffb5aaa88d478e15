//! Exact linear algebra over prime fields and the rationals.

mod field;
pub mod integer;
mod matrix;

pub use field::Field;
pub use integer::{rational_rank, IntegerEchelon};
pub use matrix::ExactMatrix;
