//! Exact integer, rational and Gaussian-rational linear algebra.

mod gaussian;
mod matrix;
mod normal_form;
mod symplectic;

pub use gaussian::Gaussian;
pub use matrix::{Field, GaussianMatrix, IntMatrix, Matrix, RationalMatrix, Ring};
pub use normal_form::{
    clear_row_denominators, column_hermite, hermite_saturated_kernel, is_primitive, lattice_basis,
    lattice_determinant, smith_normal_form, ColumnHermite, SmithForm,
};
pub use symplectic::{
    is_alternating, is_positive_definite, leading_minors, symplectic_divisor_basis, type_diagonal,
};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
