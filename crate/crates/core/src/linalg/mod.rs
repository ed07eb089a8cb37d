//! Exact linear algebra over the Gaussian rationals and over the integers.

mod integer;
mod matrix;

pub use integer::{hermite_contains, hermite_rows, smith_kernel, IntMatrix, SmithForm};
pub use matrix::{Matrix, Rref};
