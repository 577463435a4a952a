use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Matrix, RationalMatrix};
use crate::error::{Error, Result};
use crate::polarization::PolarizationType;

pub fn is_alternating(e: &IntMatrix) -> bool {
    e.is_square() && (0..e.rows()).all(|i| (0..=i).all(|j| e[(i, j)] == -e[(j, i)].clone()))
}

/// Basis in which an alternating form takes its elementary-divisor shape.
///
/// Returns `U` with `Uᵀ E U = [[0, Δ], [-Δ, 0]]`, `Δ = diag(d_1, ..., d_k)`, `d_i | d_{i+1}`.
/// The columns of `U` are ordered `(a_1, ..., a_k, b_1, ..., b_k)` with `E(a_i, b_i) = d_i`.
///
/// Skew Gaussian reduction: take the least nonzero pairing (lowest row-major index on
/// ties) as pivot, clear its row and column by Euclidean steps, and before splitting the
/// hyperbolic plane off make sure the pivot divides every remaining pairing. A remainder
/// produces a strictly smaller pivot, so the loop terminates.
pub fn symplectic_divisor_basis(e: &IntMatrix) -> Result<(IntMatrix, PolarizationType)> {
    if !is_alternating(e) {
        return Err(Error::NotAlternating);
    }
    let n = e.rows();
    if n % 2 == 1 {
        return Err(Error::DegenerateForm);
    }
    let mut form = e.clone();
    let mut basis = IntMatrix::identity(n);
    let mut divisors = Vec::with_capacity(n / 2);

    let mut start = 0;
    while start < n {
        let d = loop {
            let (i, j) = min_pairing(&form, start).ok_or(Error::DegenerateForm)?;
            swap_vectors(&mut form, &mut basis, start, i);
            // j may have been the vector just moved out of `start`
            let j = if j == start { i } else { j };
            swap_vectors(&mut form, &mut basis, start + 1, j);
            if form[(start, start + 1)].is_negative() {
                negate_vector(&mut form, &mut basis, start + 1);
            }
            let d = form[(start, start + 1)].clone();

            let mut clean = true;
            for w in start + 2..n {
                let q = form[(start, w)].div_floor(&d);
                add_vector_multiple(&mut form, &mut basis, w, start + 1, &-q);
                let q = form[(start + 1, w)].div_floor(&d);
                add_vector_multiple(&mut form, &mut basis, w, start, &q);
                clean &= form[(start, w)].is_zero() && form[(start + 1, w)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (start + 2..n).find(|&u| (start + 2..n).any(|w| !(&form[(u, w)] % &d).is_zero()));
            match offender {
                Some(u) => add_vector_multiple(&mut form, &mut basis, start, u, &BigInt::one()),
                None => break d,
            }
        };
        divisors.push(d);
        start += 2;
    }

    let k = n / 2;
    let order: Vec<usize> = (0..k).map(|t| 2 * t).chain((0..k).map(|t| 2 * t + 1)).collect();
    let u = basis.select_columns(&order);
    let divisors = divisors
        .into_iter()
        .map(|d| u64::try_from(d).map_err(|_| Error::InvalidType("divisor exceeds u64".into())))
        .collect::<Result<Vec<_>>>()?;
    let ty = PolarizationType::new(divisors)?;

    if cfg!(test) {
        crosscheck_with_smith(e, &u, &ty);
    }
    Ok((u, ty))
}

fn crosscheck_with_smith(e: &IntMatrix, u: &IntMatrix, ty: &PolarizationType) {
    let k = ty.len();
    let delta = IntMatrix::diagonal(&ty.divisors().iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
    let target = IntMatrix::zeros(k, k).hstack(&delta).vstack(&(-&delta).hstack(&IntMatrix::zeros(k, k)));
    assert_eq!(&(&u.transpose() * e) * u, target);
    let sf = super::smith_normal_form(e);
    let doubled: Vec<BigInt> = ty.divisors().iter().flat_map(|&d| [BigInt::from(d), BigInt::from(d)]).collect();
    assert_eq!(sf.invariant_factors(), doubled);
}

fn min_pairing(form: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..form.rows() {
        for j in from..form.cols() {
            let x = &form[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

fn swap_vectors(form: &mut IntMatrix, basis: &mut IntMatrix, a: usize, b: usize) {
    basis.swap_cols(a, b);
    form.swap_cols(a, b);
    form.swap_rows(a, b);
}

fn negate_vector(form: &mut IntMatrix, basis: &mut IntMatrix, a: usize) {
    basis.negate_col(a);
    form.negate_col(a);
    form.negate_row(a);
}

/// basis vector `dst += q * src`, keeping `form = basisᵀ E basis`.
fn add_vector_multiple(form: &mut IntMatrix, basis: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    basis.add_col_multiple(dst, src, q);
    form.add_col_multiple(dst, src, q);
    form.add_row_multiple(dst, src, q);
}

/// Sylvester's criterion with exact leading principal minors.
pub fn is_positive_definite(s: &RationalMatrix) -> Result<bool> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok((1..=s.rows()).all(|m| s.submatrix(0..m, 0..m).determinant() > BigRational::zero()))
}

/// Leading principal minors, for reports.
pub fn leading_minors(s: &RationalMatrix) -> Vec<BigRational> {
    (1..=s.rows().min(s.cols())).map(|m| s.submatrix(0..m, 0..m).determinant()).collect()
}

/// `Matrix::diagonal` over integers from a type.
pub fn type_diagonal(ty: &PolarizationType) -> IntMatrix {
    Matrix::diagonal(&ty.divisors().iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn ty(v: &[u64]) -> PolarizationType {
        PolarizationType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn standard_principal_plane() {
        let (u, t) = symplectic_divisor_basis(&im(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(t, ty(&[1]));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn humbert_restricted_gram() {
        for p in [2, 3, 5, 7] {
            let (_, t) = symplectic_divisor_basis(&im(&[&[0, p], &[-p, 0]])).unwrap();
            assert_eq!(t, ty(&[p as u64]));
            let (_, t) = symplectic_divisor_basis(&im(&[&[0, -p], &[p, 0]])).unwrap();
            assert_eq!(t, ty(&[p as u64]));
        }
    }

    #[test]
    fn non_chain_blocks_are_repaired() {
        // diag blocks 2 and 3: elementary divisors (1,1,6,6)
        let e = im(&[&[0, 0, 2, 0], &[0, 0, 0, 3], &[-2, 0, 0, 0], &[0, -3, 0, 0]]);
        let (_, t) = symplectic_divisor_basis(&e).unwrap();
        assert_eq!(t, ty(&[1, 6]));
    }

    #[test]
    fn dense_alternating_det_36() {
        // Pfaffian 6, entry gcd 1
        let e = im(&[&[0, 1, 2, 3], &[-1, 0, 4, 1], &[-2, -4, 0, 2], &[-3, -1, -2, 0]]);
        // Pf = e01 e23 - e02 e13 + e03 e12 = 2 - 2 + 12 = 12
        let (_, t) = symplectic_divisor_basis(&e).unwrap();
        assert_eq!(t.product(), 12);
        let e = im(&[&[0, 1, 1, 0], &[-1, 0, 2, 3], &[-1, -2, 0, 1], &[0, -3, -1, 0]]);
        // Pf = 1*1 - 1*3 + 0*2 = -2
        let (_, t) = symplectic_divisor_basis(&e).unwrap();
        assert_eq!(t, ty(&[1, 2]));
    }

    #[test]
    fn errors() {
        assert_eq!(symplectic_divisor_basis(&im(&[&[0, 1], &[1, 0]])), Err(Error::NotAlternating));
        assert_eq!(symplectic_divisor_basis(&im(&[&[0, 0], &[0, 0]])), Err(Error::DegenerateForm));
        let e = im(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(symplectic_divisor_basis(&e), Err(Error::DegenerateForm));
    }

    #[test]
    fn sylvester() {
        let q = |rows: &[&[i64]]| IntMatrix::from_i64_rows(rows).to_rational();
        assert!(is_positive_definite(&q(&[&[1]])).unwrap());
        assert!(is_positive_definite(&q(&[&[2, 1], &[1, 3]])).unwrap());
        assert!(!is_positive_definite(&q(&[&[1, 2], &[2, 1]])).unwrap());
        assert_eq!(is_positive_definite(&q(&[&[1, 2], &[0, 1]])), Err(Error::NotSymmetric));
        assert_eq!(leading_minors(&q(&[&[2, 1], &[1, 3]])), vec![BigRational::from_integer(2.into()), BigRational::from_integer(5.into())]);
    }
}
