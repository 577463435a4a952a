//! The locus of principally polarized `g`-folds containing a `k`-dimensional
//! abelian subvariety of type `D`: its linear equations on Siegel space, explicit
//! members, dimension counts, and the genus-2 singular relations.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermite_saturated_kernel, Gaussian, GaussianMatrix, IntMatrix, Matrix, RationalMatrix};
use crate::polarization::PolarizationType;
use crate::torus::{certify_nonsimple, CertificateReport, PolarizedTorus, SiegelMatrix};

/// Linear equations cutting out the locus inside Siegel space. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusEquationSet {
    #[serde(skip)]
    pub g: usize,
    #[serde(skip)]
    pub k: usize,
    #[serde(skip)]
    pub ty: PolarizationType,
    /// `(i, j, d_i)`: `z_ij = d_i z_(g+1-i)j`.
    pub proportionality: Vec<(usize, usize, u64)>,
    /// `(i, j)`: `z_ij = 0`.
    pub vanishing: Vec<(usize, usize)>,
}

impl LocusEquationSet {
    /// Rank of the equations as linear forms on the `g(g+1)/2` coordinates of a symmetric matrix.
    pub fn independent_count(&self) -> usize {
        let g = self.g;
        let var = |i: usize, j: usize| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            let (a, b) = (a - 1, b - 1);
            a * (2 * g + 1 - a) / 2 + (b - a)
        };
        let n = g * (g + 1) / 2;
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for &(i, j, d) in &self.proportionality {
            let mut r = vec![BigRational::zero(); n];
            r[var(i, j)] += BigRational::one();
            r[var(g + 1 - i, j)] -= BigRational::from_integer(BigInt::from(d));
            rows.push(r);
        }
        for &(i, j) in &self.vanishing {
            let mut r = vec![BigRational::zero(); n];
            r[var(i, j)] = BigRational::one();
            rows.push(r);
        }
        if rows.is_empty() {
            return 0;
        }
        RationalMatrix::from_rows(rows).rank()
    }

    pub fn len(&self) -> usize {
        self.proportionality.len() + self.vanishing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_k(g: usize, k: usize) -> Result<()> {
    if 2 * k > g {
        return Err(Error::KTooLarge { g, k });
    }
    Ok(())
}

pub fn locus_equations(g: usize, k: usize, ty: &PolarizationType) -> Result<LocusEquationSet> {
    check_k(g, k)?;
    if ty.len() != k {
        return Err(Error::DimensionMismatch(format!("type {ty} has length {}, expected k = {k}", ty.len())));
    }
    let d = ty.divisors();
    let proportionality = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j, d[i - 1]))).collect();
    let vanishing = (k + 1..=g - k).flat_map(|i| (1..=k).map(move |j| (i, j))).collect();
    Ok(LocusEquationSet { g, k, ty: ty.clone(), proportionality, vanishing })
}

/// Exact check of every locus equation; `false` when `D` is too long for `Z`.
pub fn satisfies_equations(z: &SiegelMatrix, ty: &PolarizationType) -> bool {
    let Ok(eqs) = locus_equations(z.g(), ty.len(), ty) else {
        return false;
    };
    let g = z.g();
    eqs.proportionality.iter().all(|&(i, j, d)| {
        *z.entry(i - 1, j - 1) == z.entry(g - i, j - 1).scale(&BigRational::from_integer(BigInt::from(d)))
    }) && eqs.vanishing.iter().all(|&(i, j)| z.entry(i - 1, j - 1).is_zero())
}

/// `(C(k+1, 2) + C(g-k+1, 2), k(g-k))`.
pub fn locus_dimension(g: usize, k: usize) -> Result<(usize, usize)> {
    if k == 0 {
        return Err(Error::InvalidDimensions("k must be positive".into()));
    }
    check_k(g, k)?;
    let tri = |n: usize| n * (n + 1) / 2;
    let dim = tri(k) + tri(g - k);
    let codim = k * (g - k);
    assert_eq!(dim + codim, tri(g));
    Ok((dim, codim))
}

/// Reversal of the last `k` of `n` indices (0-based), fixing the first `n - k`.
fn sigma(n: usize, k: usize, a: usize) -> usize {
    if a < n - k {
        a
    } else {
        n - 1 - (a - (n - k))
    }
}

fn real(d: u64) -> Gaussian {
    Gaussian::from(BigInt::from(d))
}

/// A member of the locus, with coordinates of both subvarieties.
#[derive(Clone, Debug)]
pub struct Member {
    pub z_a: SiegelMatrix,
    /// `f_1..f_k, g_1..g_k` with `g_i = d_i e_i + e_(g+1-i)`.
    pub c_m: IntMatrix,
    pub c_n: IntMatrix,
    pub certificate: CertificateReport,
}

/// Assembles `Z_A` from `Z_M` (`k x k`), `Z_N` (`(g-k) x (g-k)`) and `D`.
///
/// With `D~ = (1, ..., 1, d_1, ..., d_k)`, the lower-right block is
/// `X = D~^{-1} (Z_N + Z~_M) D~^{-1}` read with the last `k` indices reversed, so that
/// the rows `g+1-i` carry `Z_M / d_i` exactly as the locus equations demand.
pub fn construct_member(z_m: &SiegelMatrix, z_n: &SiegelMatrix, ty: &PolarizationType) -> Result<Member> {
    let k = z_m.g();
    let g = k + z_n.g();
    check_k(g, k)?;
    if ty.len() != k {
        return Err(Error::DimensionMismatch(format!("type {ty} has length {}, Z_M is {k}x{k}", ty.len())));
    }
    let dt = ty.complementary(g)?;
    let n = g - k;
    let off = g - 2 * k;
    let d = ty.divisors();

    // X' in the frame of Z_N, then X[r][c] = X'[σ r][σ c]
    let x_prime = Matrix::from_fn(n, n, |a, b| {
        let mut v = z_n.entry(a, b).clone();
        if a >= off && b >= off {
            v = v + z_m.entry(a - off, b - off).clone();
        }
        v / (real(dt.divisors()[a]) * real(dt.divisors()[b]))
    });
    let x = Matrix::from_fn(n, n, |r, c| x_prime[(sigma(n, k, r), sigma(n, k, c))].clone());

    let mut z = GaussianMatrix::zeros(g, g);
    for i in 0..k {
        for j in 0..k {
            z[(i, j)] = z_m.entry(i, j).clone();
            let low = z_m.entry(i, j).clone() / real(d[i]);
            z[(g - 1 - i, j)] = low.clone();
            z[(j, g - 1 - i)] = low;
        }
    }
    for r in 0..n {
        for c in 0..n {
            z[(k + r, k + c)] = x[(r, c)].clone();
        }
    }
    let z_a = SiegelMatrix::new(z)?;

    let (c_m, c_n) = member_coordinates(g, ty)?;
    let certificate = certify_nonsimple(&PolarizedTorus::principal(z_a.clone()), &c_m, ty);
    Ok(Member { z_a, c_m, c_n, certificate })
}

/// Lattice coordinates of `M` and of its complement `N` for a member of the locus.
pub fn member_coordinates(g: usize, ty: &PolarizationType) -> Result<(IntMatrix, IntMatrix)> {
    let k = ty.len();
    check_k(g, k)?;
    let n = g - k;
    let off = g - 2 * k;
    let d = ty.divisors();
    let f = |j: usize| j;
    let e = |j: usize| g + j;

    let mut c_m = IntMatrix::zeros(2 * g, 2 * k);
    for i in 0..k {
        c_m[(f(i), i)] = BigInt::one();
        c_m[(e(i), k + i)] = BigInt::from(d[i]);
        c_m[(e(g - 1 - i), k + i)] += BigInt::one();
    }

    let mut c_n = IntMatrix::zeros(2 * g, 2 * n);
    for a in 0..n {
        if a < off {
            c_n[(f(k + a), a)] = BigInt::one();
        } else {
            let i = a - off;
            c_n[(f(g - 1 - i), a)] = BigInt::from(d[i]);
            c_n[(f(i), a)] -= BigInt::one();
        }
        c_n[(e(k + sigma(n, k, a)), n + a)] = BigInt::one();
    }
    Ok((c_m, c_n))
}

/// `Z_N = D~ X D~ - Z~_M` for `Z_A` on the locus (same index convention as
/// [`construct_member`]).
pub fn complementary_period(z_a: &SiegelMatrix, ty: &PolarizationType) -> Result<SiegelMatrix> {
    if !satisfies_equations(z_a, ty) {
        return Err(Error::EquationsNotSatisfied);
    }
    let g = z_a.g();
    let k = ty.len();
    let n = g - k;
    let off = g - 2 * k;
    let dt = ty.complementary(g)?;
    let z_n = Matrix::from_fn(n, n, |a, b| {
        let x = z_a.entry(k + sigma(n, k, a), k + sigma(n, k, b)).clone();
        let mut v = x * real(dt.divisors()[a]) * real(dt.divisors()[b]);
        if a >= off && b >= off {
            v = v - z_a.entry(a - off, b - off).clone();
        }
        v
    });
    SiegelMatrix::new(z_n)
}

/// `a t_1 + b t_2 + c t_3 + d (t_2^2 - t_1 t_3) + e = 0` for `Z = [[t_1, t_2], [t_2, t_3]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularRelation {
    pub rel: [i64; 5],
    pub delta: i128,
}

/// `b^2 - 4ac - 4de`.
pub fn humbert_discriminant(rel: &[i64; 5]) -> i128 {
    let [a, b, c, d, e] = rel.map(i128::from);
    b * b - 4 * a * c - 4 * d * e
}

fn relation_coefficients(z: &SiegelMatrix) -> Result<[Gaussian; 5]> {
    if z.g() != 2 {
        return Err(Error::InvalidDimensions(format!("singular relations need g = 2, got {}", z.g())));
    }
    let (t1, t2, t3) = (z.entry(0, 0).clone(), z.entry(0, 1).clone(), z.entry(1, 1).clone());
    let w = t2.clone() * t2.clone() - t1.clone() * t3.clone();
    Ok([t1, t2, t3, w, Gaussian::one()])
}

/// Exact left-hand side of the singular relation.
pub fn singular_relation_residual(z: &SiegelMatrix, rel: &[i64; 5]) -> Result<Gaussian> {
    let coeffs = relation_coefficients(z)?;
    Ok(coeffs
        .iter()
        .zip(rel)
        .fold(Gaussian::zero(), |acc, (c, &r)| acc + c.clone() * Gaussian::from(BigInt::from(r))))
}

fn is_positive_square(x: i128) -> bool {
    x > 0 && {
        let r = x.sqrt();
        r * r == x
    }
}

/// Primitive integer relations of sup-norm at most `height`, both signs, sorted by
/// discriminant and then lexicographically. Only positive square discriminants
/// unless `all_discriminants`.
pub fn detect_singular_relations(z: &SiegelMatrix, height: u64, all_discriminants: bool) -> Result<Vec<SingularRelation>> {
    detect_singular_relations_with_jobs(z, height, all_discriminants, 1)
}

/// [`detect_singular_relations`] with the enumeration split over `jobs` threads.
pub fn detect_singular_relations_with_jobs(
    z: &SiegelMatrix,
    height: u64,
    all_discriminants: bool,
    jobs: usize,
) -> Result<Vec<SingularRelation>> {
    let coeffs = relation_coefficients(z)?;
    let m = RationalMatrix::from_rows(vec![
        coeffs.iter().map(|c| c.re.clone()).collect(),
        coeffs.iter().map(|c| c.im.clone()).collect(),
    ]);
    let kernel = hermite_saturated_kernel(&m);
    let h = BigInt::from(height);
    let mut out: Vec<SingularRelation> = kernel_points(&kernel, &h, jobs.max(1))
        .into_iter()
        .filter_map(|x| {
            let rel: [i64; 5] = std::array::from_fn(|i| i64::try_from(&x[i]).expect("bounded by height"));
            let g = rel.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g != 1 {
                return None;
            }
            let delta = humbert_discriminant(&rel);
            (all_discriminants || is_positive_square(delta)).then_some(SingularRelation { rel, delta })
        })
        .collect();
    out.sort_by_key(|a| (a.delta, a.rel));
    Ok(out)
}

/// Range of the `j`-th coefficient keeping the `j`-th pivot coordinate in `[-h, h]`.
fn coefficient_range(basis: &IntMatrix, pivot: usize, j: usize, partial: &[BigInt], h: &BigInt) -> (BigInt, BigInt) {
    let piv = &basis[(pivot, j)];
    ((-h - &partial[pivot]).div_ceil(piv), (h - &partial[pivot]).div_floor(piv))
}

fn search_points(
    j: usize,
    basis: &IntMatrix,
    pivots: &[usize],
    h: &BigInt,
    partial: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if j == pivots.len() {
        if partial.iter().all(|v| v.abs() <= *h) && partial.iter().any(|v| !v.is_zero()) {
            out.push(partial.clone());
        }
        return;
    }
    let (mut y, hi) = coefficient_range(basis, pivots[j], j, partial, h);
    while y <= hi {
        for (i, p) in partial.iter_mut().enumerate() {
            *p += &y * &basis[(i, j)];
        }
        search_points(j + 1, basis, pivots, h, partial, out);
        for (i, p) in partial.iter_mut().enumerate() {
            *p -= &y * &basis[(i, j)];
        }
        y += 1;
    }
}

/// All nonzero lattice points `x = L y` with `|x_i| <= h`, for `L` in lower-triangular
/// column HNF. Pivot rows bound each coefficient given the earlier ones.
fn kernel_points(basis: &IntMatrix, h: &BigInt, jobs: usize) -> Vec<Vec<BigInt>> {
    let n = basis.rows();
    let r = basis.cols();
    if r == 0 {
        return vec![];
    }
    let pivots: Vec<usize> = (0..r).map(|j| (0..n).find(|&i| !basis[(i, j)].is_zero()).expect("basis column")).collect();
    let zero = vec![BigInt::zero(); n];
    let (lo, hi) = coefficient_range(basis, pivots[0], 0, &zero, h);
    let mut firsts = Vec::new();
    let mut y = lo;
    while y <= hi {
        firsts.push(y.clone());
        y += 1;
    }
    let chunk = firsts.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = firsts
            .chunks(chunk)
            .map(|ys| {
                let pivots = &pivots;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for y in ys {
                        let mut partial: Vec<BigInt> = (0..n).map(|i| y * &basis[(i, 0)]).collect();
                        search_points(1, basis, pivots, h, &mut partial, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|t| t.join().expect("enumeration thread")).collect()
    })
}
