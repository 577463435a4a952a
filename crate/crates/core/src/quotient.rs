//! Products `M x N` of complementary polarized tori and their quotients by allowed
//! isotropic subgroups, renormalized to a principal period matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::finite::{classify_subgroup, standard_allowed, DirectSum, FiniteSubgroup, FiniteSymplecticModule, SubgroupClass};
use crate::linalg::{
    is_primitive, lattice_basis, symplectic_divisor_basis, Gaussian, GaussianMatrix, IntMatrix, Matrix, RationalMatrix,
};
use crate::polarization::PolarizationType;
use crate::torus::{certify_nonsimple, standard_type, CertificateReport, PolarizedTorus, SiegelMatrix};

/// `M x N` with lattice `<[[Z_M, 0, Δ, 0], [0, Z_N, 0, Δ~]]>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTorus {
    m: PolarizedTorus,
    n: PolarizedTorus,
}

impl ProductTorus {
    pub fn m(&self) -> &PolarizedTorus {
        &self.m
    }

    pub fn n(&self) -> &PolarizedTorus {
        &self.n
    }

    pub fn k(&self) -> usize {
        self.m.g()
    }

    pub fn g(&self) -> usize {
        self.m.g() + self.n.g()
    }

    /// The type `D` of `M`.
    pub fn polarization_type(&self) -> &PolarizationType {
        self.m.polarization_type()
    }

    fn divisors(&self) -> Vec<u64> {
        let mut d = self.m.polarization_type().divisors().to_vec();
        d.extend_from_slice(self.n.polarization_type().divisors());
        d
    }

    /// Index of the lattice coordinate of `f` (or scaled `e`) number `j` of `M` / `N`.
    fn f_index(&self, in_n: bool, j: usize) -> usize {
        if in_n {
            self.k() + j
        } else {
            j
        }
    }

    fn e_index(&self, in_n: bool, j: usize) -> usize {
        self.g() + self.f_index(in_n, j)
    }

    pub fn period_matrix(&self) -> GaussianMatrix {
        let z = SiegelMatrix::block_diagonal(self.m.period(), self.n.period());
        let delta = Matrix::diagonal(&self.divisors().iter().map(|&d| Gaussian::from(BigInt::from(d))).collect::<Vec<_>>());
        z.matrix().hstack(&delta)
    }

    /// `[[0, -Δ'], [Δ', 0]]` with `Δ' = diag(D, D~)`.
    pub fn gram(&self) -> IntMatrix {
        let g = self.g();
        let delta = Matrix::diagonal(&self.divisors().iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
        let zero = IntMatrix::zeros(g, g);
        zero.hstack(&-&delta).vstack(&delta.hstack(&zero))
    }

    /// `K(H_M) ⊕ K(H_N)`.
    pub fn kernel_module(&self) -> DirectSum {
        DirectSum::new(
            FiniteSymplecticModule::new(self.m.polarization_type()),
            FiniteSymplecticModule::new(self.n.polarization_type()),
        )
    }

    /// Rational lattice coordinates of the torsion lifts, in module coordinate order:
    /// `λ_j -> f_j / d_j`, `μ_j -> e_j` (which is the scaled basis vector over `d_j`).
    pub fn torsion_lifts(&self) -> RationalMatrix {
        let n = 2 * self.g();
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for (in_n, t) in [(false, self.m.polarization_type()), (true, self.n.polarization_type())] {
            let nontrivial: Vec<(usize, u64)> = t.divisors().iter().copied().enumerate().filter(|&(_, d)| d > 1).collect();
            for &(j, d) in &nontrivial {
                let mut v = vec![BigRational::zero(); n];
                v[self.f_index(in_n, j)] = BigRational::new(BigInt::one(), BigInt::from(d));
                cols.push(v);
            }
            for &(j, d) in &nontrivial {
                let mut v = vec![BigRational::zero(); n];
                v[self.e_index(in_n, j)] = BigRational::new(BigInt::one(), BigInt::from(d));
                cols.push(v);
            }
        }
        Matrix::from_columns(&cols, n)
    }

    /// Lattice coordinates of `M` (then of `N`): its `f`'s and scaled `e`'s.
    pub fn factor_coords(&self, in_n: bool) -> IntMatrix {
        let dim = if in_n { self.n.g() } else { self.k() };
        let n = 2 * self.g();
        let mut c = IntMatrix::zeros(n, 2 * dim);
        for j in 0..dim {
            c[(self.f_index(in_n, j), j)] = BigInt::one();
            c[(self.e_index(in_n, j), dim + j)] = BigInt::one();
        }
        c
    }
}

/// Checks that the types are `(D, D~)` for the total dimension.
pub fn product(m: &PolarizedTorus, n: &PolarizedTorus) -> Result<ProductTorus> {
    let k = m.g();
    let g = k + n.g();
    let d = m.polarization_type();
    let expected = d
        .complementary(g)
        .map_err(|e| Error::TypesNotComplementary(format!("{d} in dimension {g}: {e}")))?;
    if *n.polarization_type() != expected {
        return Err(Error::TypesNotComplementary(format!(
            "N has type {}, the complement of {d} in dimension {g} is {expected}",
            n.polarization_type()
        )));
    }
    Ok(ProductTorus { m: m.clone(), n: n.clone() })
}

/// A principally polarized quotient `(M x N) / K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub z_prime: SiegelMatrix,
    /// Columns: symplectic basis of `Λ'` in the coordinates of the product lattice.
    pub basis_change: RationalMatrix,
    pub induced_type: PolarizationType,
    /// `[Λ' : Λ]`.
    pub lattice_index: BigInt,
    /// Coordinates of `M` and `N` in the new lattice basis.
    pub c_m: IntMatrix,
    pub c_n: IntMatrix,
}

fn denominator_lcm(m: &RationalMatrix) -> BigInt {
    let mut l = BigInt::one();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            l = l.lcm(m[(i, j)].denom());
        }
    }
    l
}

/// `(M x N) / K` for an allowed subgroup `K` of `K(H_M) ⊕ K(H_N)`.
pub fn quotient_ppav(p: &ProductTorus, k: &FiniteSubgroup<DirectSum>) -> Result<QuotientResult> {
    if *k.parent() != p.kernel_module() {
        return Err(Error::TypeMismatch);
    }
    if classify_subgroup(k) != SubgroupClass::Allowed {
        return Err(Error::NotAllowed);
    }
    let g = p.g();
    let n = 2 * g;

    let lifts = p.torsion_lifts();
    let gens = Matrix::from_fn(lifts.cols(), k.generators().len(), |i, j| {
        BigRational::from_integer(BigInt::from(k.generators()[j][i]))
    });
    let lifted = &lifts * &gens;
    let spanning = RationalMatrix::identity(n).hstack(&lifted);
    let l = denominator_lcm(&spanning);
    let lr = BigRational::from_integer(l.clone());
    let scaled = spanning.scale(&lr).to_integer().expect("denominators cleared");
    let basis_int = lattice_basis(&scaled);
    let basis = basis_int.to_rational().scale(&(BigRational::one() / lr));

    let index = BigRational::one() / basis.determinant().abs();
    if !index.is_integer() {
        return Err(Error::NonIntegralGram);
    }
    let lattice_index = index.to_integer();

    let gram = (&(&basis.transpose() * &p.gram().to_rational()) * &basis).to_integer().ok_or(Error::NonIntegralGram)?;
    let (u, induced_type) = match standard_type(&gram) {
        Some(t) => (IntMatrix::identity(n), t),
        None => {
            let (u, t) = symplectic_divisor_basis(&gram)?;
            // (a's, b's) -> (b's, a's)
            let order: Vec<usize> = (g..2 * g).chain(0..g).collect();
            (u.select_columns(&order), t)
        }
    };
    if !induced_type.is_principal() {
        return Err(Error::NotPrincipal(format!("induced type {induced_type}")));
    }
    let mut new_basis = &basis * &u.to_rational();

    let pi = p.period_matrix();
    let (z_prime, swapped) = normalize_period(&pi, &new_basis, g)?;
    for i in swapped {
        // (b_i, a_i) -> (a_i, -b_i) keeps the Gram matrix standard
        let b: Vec<BigRational> = new_basis.column(i);
        for r in 0..n {
            new_basis[(r, i)] = new_basis[(r, g + i)].clone();
            new_basis[(r, g + i)] = -b[r].clone();
        }
    }

    let inv = new_basis.inverse().expect("lattice basis");
    let push = |c: &IntMatrix| (&inv * &c.to_rational()).to_integer();
    let c_m = push(&p.factor_coords(false)).ok_or(Error::NotAllowed)?;
    let c_n = push(&p.factor_coords(true)).ok_or(Error::NotAllowed)?;
    // K meets neither factor, i.e. both stay saturated in Λ'
    if !is_primitive(&c_m) || !is_primitive(&c_n) {
        return Err(Error::NotAllowed);
    }

    Ok(QuotientResult { z_prime, basis_change: new_basis, induced_type, lattice_index, c_m, c_n })
}

/// `Z' = W_a^{-1} W_b` for the basis images `W = Π B`, trying half-swaps in a fixed
/// order if `W_a` is singular. Returns the swapped pair indices.
fn normalize_period(pi: &GaussianMatrix, basis: &RationalMatrix, g: usize) -> Result<(SiegelMatrix, Vec<usize>)> {
    let w = pi * &basis.to_gaussian();
    for mask in 0u64..(1 << g) {
        let swapped: Vec<usize> = (0..g).filter(|i| mask >> i & 1 == 1).collect();
        let mut w = w.clone();
        for &i in &swapped {
            for r in 0..g {
                let b = w[(r, i)].clone();
                w[(r, i)] = w[(r, g + i)].clone();
                w[(r, g + i)] = -b;
            }
        }
        let w_b = w.submatrix(0..g, 0..g);
        let w_a = w.submatrix(0..g, g..2 * g);
        if let Some(inv) = w_a.inverse() {
            return Ok((SiegelMatrix::new(&inv * &w_b)?, swapped));
        }
    }
    Err(Error::NotSiegel("no half-swap gives an invertible period block".into()))
}

/// `Ψ(Z_k, Z_{g-k})`: quotient by the standard allowed subgroup, with the certificate for `M`.
#[derive(Clone, Debug)]
pub struct PsiResult {
    pub quotient: QuotientResult,
    pub certificate: CertificateReport,
}

pub fn psi(z_k: &SiegelMatrix, z_gk: &SiegelMatrix, ty: &PolarizationType) -> Result<PsiResult> {
    let k = z_k.g();
    let g = k + z_gk.g();
    if 2 * k > g {
        return Err(Error::KTooLarge { g, k });
    }
    let m = PolarizedTorus::new(z_k.clone(), ty.clone())?;
    let n = PolarizedTorus::new(z_gk.clone(), ty.complementary(g)?)?;
    let p = product(&m, &n)?;
    let quotient = quotient_ppav(&p, &standard_allowed(ty))?;
    let a = PolarizedTorus::principal(quotient.z_prime.clone());
    let certificate = certify_nonsimple(&a, &quotient.c_m, ty);
    Ok(PsiResult { quotient, certificate })
}
