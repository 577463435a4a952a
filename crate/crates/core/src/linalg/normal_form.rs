//! Integer lattice normal forms: Smith, column Hermite, saturated kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Matrix, RationalMatrix};

/// `s = u * m * v` with `s` diagonal, `s_1 | s_2 | ...`, `s_i >= 0`, `u` and `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries (elementary divisors).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Position of the nonzero entry of least absolute value in `a[from.., from..]`,
/// ties broken by the lowest row-major index.
fn min_abs_entry(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Floor division, so the remainder has the sign of the divisor.
fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                return finish(a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = floor_div(&a[(i, t)], &pivot);
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-q.clone());
                    u.add_row_multiple(i, t, &-q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = floor_div(&a[(t, j)], &pivot);
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &-q.clone());
                    v.add_col_multiple(j, t, &-q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole remaining block
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[(i, j)] % &pivot).is_zero()));
            if let Some(i) = offender {
                a.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, v)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { s, u, v }
}

/// Column-style Hermite normal form.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    /// `h = m * v`; the first `pivots.len()` columns are nonzero, the rest vanish.
    pub h: IntMatrix,
    /// Unimodular transform.
    pub v: IntMatrix,
    /// Row of the leading (topmost) nonzero entry of each nonzero column.
    pub pivots: Vec<usize>,
}

impl ColumnHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns: a canonical basis of the column lattice.
    pub fn basis(&self) -> IntMatrix {
        self.h.submatrix(0..self.h.rows(), 0..self.rank())
    }

    /// Columns of `v` spanning the integer kernel of the input.
    pub fn kernel(&self) -> IntMatrix {
        self.v.submatrix(0..self.v.rows(), self.rank()..self.v.cols())
    }
}

/// Lower-triangular column HNF: pivots positive, entries left of a pivot reduced
/// into `[0, pivot)`, entries above a pivot zero.
pub fn column_hermite(m: &IntMatrix) -> ColumnHermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in 0..rows {
        if c == cols {
            break;
        }
        for j in c + 1..cols {
            if h[(row, j)].is_zero() {
                continue;
            }
            let x = h[(row, c)].clone();
            let y = h[(row, j)].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [col_c, col_j] <- [col_c, col_j] * [[s, -y/g], [t, x/g]], determinant 1
            combine_columns(&mut h, c, j, &s, &t, &-yg.clone(), &xg);
            combine_columns(&mut v, c, j, &s, &t, &-yg, &xg);
        }
        if h[(row, c)].is_zero() {
            continue;
        }
        if h[(row, c)].is_negative() {
            h.negate_col(c);
            v.negate_col(c);
        }
        let pivot = h[(row, c)].clone();
        for l in 0..c {
            let q = floor_div(&h[(row, l)], &pivot);
            if !q.is_zero() {
                h.add_col_multiple(l, c, &-q.clone());
                v.add_col_multiple(l, c, &-q);
            }
        }
        pivots.push(row);
        c += 1;
    }
    ColumnHermite { h, v, pivots }
}

/// new_a = s*a + t*b, new_b = p*a + q*b (columns).
fn combine_columns(m: &mut IntMatrix, a: usize, b: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        let y = m[(i, b)].clone();
        m[(i, a)] = s * &x + t * &y;
        m[(i, b)] = p * &x + q * &y;
    }
}

/// Canonical basis (column HNF) of the lattice spanned by the columns of `m`.
pub fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    column_hermite(m).basis()
}

/// Multiplies each row by the lcm of its denominators.
pub fn clear_row_denominators(m: &RationalMatrix) -> IntMatrix {
    let lcms: Vec<BigInt> = (0..m.rows())
        .map(|i| (0..m.cols()).fold(BigInt::one(), |acc, c| acc.lcm(m[(i, c)].denom())))
        .collect();
    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        (&m[(i, j)] * BigRational::from_integer(lcms[i].clone())).to_integer()
    })
}

/// Z-basis of the saturated lattice `{v in Z^n : m v = 0}` in canonical column HNF.
/// Returns an `n x 0` matrix when the kernel is trivial.
pub fn hermite_saturated_kernel(m: &RationalMatrix) -> IntMatrix {
    let int = clear_row_denominators(m);
    // the kernel of a unimodular column reduction is automatically saturated
    let kernel = column_hermite(&int).kernel();
    lattice_basis(&kernel)
}

/// True when the columns span a saturated sublattice (all elementary divisors 1).
pub fn is_primitive(m: &IntMatrix) -> bool {
    smith_normal_form(m).invariant_factors().iter().all(One::is_one)
}

/// Absolute determinant of the lattice spanned by the columns of a full-rank square basis.
pub fn lattice_determinant(m: &IntMatrix) -> BigInt {
    let sf = smith_normal_form(m);
    if sf.rank() < m.cols() {
        return BigInt::zero();
    }
    sf.invariant_factors().iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    /// Elementary divisors by the determinantal-divisor oracle: d_k = gcd of k x k minors.
    fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
        use itertools_free::combinations;
        let r = m.rows().min(m.cols());
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=r {
            let mut g = BigInt::zero();
            for rows in combinations(m.rows(), k) {
                for cols in combinations(m.cols(), k) {
                    let sub = Matrix::from_fn(k, k, |i, j| BigRational::from_integer(m[(rows[i], cols[j])].clone()));
                    g = g.gcd(&sub.determinant().to_integer());
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    mod itertools_free {
        pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(0, n, k, &mut Vec::new(), &mut out);
            out
        }
    }

    fn check_smith(m: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(m);
        assert_eq!(&(&sf.u * m) * &sf.v, sf.s);
        assert!(sf.s.is_diagonal());
        let du = sf.u.to_rational().determinant();
        let dv = sf.v.to_rational().determinant();
        assert!(du.abs().is_one() && dv.abs().is_one());
        let f = sf.invariant_factors();
        assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        assert!(f.iter().all(|x| x.is_positive()));
        sf
    }

    #[test]
    fn smith_identity() {
        let sf = check_smith(&im(&[&[1, 0], &[0, 1]]));
        assert_eq!(sf.s, im(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn smith_against_determinantal_oracle() {
        let cases = [
            im(&[&[2, 4], &[6, 8]]),
            im(&[&[2, 0], &[0, 3]]),
            im(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 6], &[0, 0, -6, 0]]),
            im(&[&[3, 5, 7], &[2, 4, 6]]),
            im(&[&[0, 0], &[0, 0], &[4, 10]]),
        ];
        for m in &cases {
            let sf = check_smith(m);
            assert_eq!(sf.invariant_factors(), determinantal_divisors(m), "{m:?}");
        }
        let two_four: Vec<BigInt> = vec![2.into(), 4.into()];
        assert_eq!(smith_normal_form(&cases[0]).invariant_factors(), two_four);
        let one_six: Vec<BigInt> = vec![1.into(), 6.into()];
        assert_eq!(smith_normal_form(&cases[1]).invariant_factors(), one_six);
    }

    #[test]
    fn smith_zero_and_empty() {
        let sf = check_smith(&IntMatrix::zeros(2, 3));
        assert!(sf.invariant_factors().is_empty());
        let sf = smith_normal_form(&IntMatrix::zeros(3, 0));
        assert_eq!(sf.rank(), 0);
    }

    #[test]
    fn hermite_shape() {
        let m = im(&[&[4, 6, 2], &[1, 3, 5]]);
        let hf = column_hermite(&m);
        assert_eq!(&m * &hf.v, hf.h);
        assert_eq!(hf.rank(), 2);
        let h = &hf.h;
        assert!(h[(0, 1)].is_zero() && h[(0, 2)].is_zero() && h[(1, 2)].is_zero());
        assert!(h[(0, 0)].is_positive() && h[(1, 1)].is_positive());
        assert!(!h[(1, 0)].is_negative() && h[(1, 0)] < h[(1, 1)]);
    }

    #[test]
    fn saturated_kernel_examples() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let k = hermite_saturated_kernel(&Matrix::from_rows(vec![vec![q(1, 1), q(0, 1)]]));
        assert_eq!(k, im(&[&[0], &[1]]));
        let k = hermite_saturated_kernel(&Matrix::from_rows(vec![vec![q(1, 2), q(-1, 2)]]));
        assert_eq!(k, im(&[&[1], &[1]]));

        let m = Matrix::from_rows(vec![[2, 1, 3, 5, 1].iter().map(|&x| q(x, 1)).collect()]);
        let k = hermite_saturated_kernel(&m);
        assert_eq!(k.cols(), 4);
        assert!((&m.map(|x| x.to_integer()) * &k).is_zero());
        assert!(smith_normal_form(&k).invariant_factors().iter().all(One::is_one));
    }

    #[test]
    fn trivial_kernel_is_empty() {
        let m = im(&[&[1, 0], &[0, 1]]).to_rational();
        let k = hermite_saturated_kernel(&m);
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }
}
