//! Smith and Hermite forms of a small integer matrix, and a symplectic basis for an
//! alternating form.

use nonsimple::linalg::{column_hermite, smith_normal_form, symplectic_divisor_basis, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("invariant factors: {:?}", snf.invariant_factors());
    println!("U * M * V = S:\n{:?}", snf.s);

    let h = column_hermite(&m);
    println!("column HNF (lower triangular):\n{:?}", h.basis());

    let e = IntMatrix::from_i64_rows(&[&[0, 2, 0, 4], &[-2, 0, 6, 0], &[0, -6, 0, 2], &[-4, 0, -2, 0]]);
    let (u, ty) = symplectic_divisor_basis(&e).expect("alternating, nondegenerate");
    println!("type of E: {ty}");
    println!("U^T E U:\n{:?}", &(&u.transpose() * &e) * &u);
}
