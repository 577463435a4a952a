//! Polarized complex tori `C^g / <Z D>`, sublattice embeddings and the
//! endomorphisms attached to them.
//!
//! The lattice basis is always `(f_1, ..., f_g, d_1 e_1, ..., d_g e_g)` where `f_j`
//! is the `j`-th column of `Z`. In that basis the imaginary part of the
//! polarization `H = (Im Z)^{-1}` has Gram matrix `[[0, -Δ], [Δ, 0]]`, so
//! `E(e_i, f_j) = δ_ij`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    hermite_saturated_kernel, is_positive_definite, is_primitive, leading_minors, symplectic_divisor_basis,
    type_diagonal, Gaussian, GaussianMatrix, IntMatrix, Matrix, RationalMatrix,
};
use crate::polarization::PolarizationType;

/// A point of the Siegel upper half space: `Z = Zᵀ`, `Im Z > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelMatrix {
    z: GaussianMatrix,
}

impl SiegelMatrix {
    pub fn new(z: GaussianMatrix) -> Result<Self> {
        if !z.is_square() {
            return Err(Error::InvalidDimensions(format!("period matrix is {}x{}", z.rows(), z.cols())));
        }
        if !z.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let y = z.im();
        if !is_positive_definite(&y)? {
            let minors: Vec<String> = leading_minors(&y).iter().map(|m| m.to_string()).collect();
            return Err(Error::NotSiegel(format!("leading minors of Im Z: [{}]", minors.join(", "))));
        }
        Ok(SiegelMatrix { z })
    }

    pub fn from_parts(re: &RationalMatrix, im: &RationalMatrix) -> Result<Self> {
        SiegelMatrix::new(GaussianMatrix::from_parts(re, im))
    }

    /// `i * Y` for a real positive definite `Y`.
    pub fn purely_imaginary(im: &RationalMatrix) -> Result<Self> {
        SiegelMatrix::from_parts(&Matrix::zeros(im.rows(), im.cols()), im)
    }

    /// `diag(a, b)`.
    pub fn block_diagonal(a: &SiegelMatrix, b: &SiegelMatrix) -> SiegelMatrix {
        let (p, q) = (a.g(), b.g());
        let z = Matrix::from_fn(p + q, p + q, |i, j| match (i < p, j < p) {
            (true, true) => a.z[(i, j)].clone(),
            (false, false) => b.z[(i - p, j - p)].clone(),
            _ => Gaussian::zero(),
        });
        SiegelMatrix { z }
    }

    pub fn g(&self) -> usize {
        self.z.rows()
    }

    pub fn matrix(&self) -> &GaussianMatrix {
        &self.z
    }

    pub fn into_matrix(self) -> GaussianMatrix {
        self.z
    }

    pub fn real(&self) -> RationalMatrix {
        self.z.re()
    }

    pub fn imaginary(&self) -> RationalMatrix {
        self.z.im()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Gaussian {
        &self.z[(i, j)]
    }
}

/// `C^g / <Z D>` with the polarization of type `D` whose analytic form is `(Im Z)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedTorus {
    z: SiegelMatrix,
    ty: PolarizationType,
}

impl PolarizedTorus {
    pub fn new(z: SiegelMatrix, ty: PolarizationType) -> Result<Self> {
        if ty.len() != z.g() {
            return Err(Error::DimensionMismatch(format!("type {ty} for a {}-dimensional torus", z.g())));
        }
        Ok(PolarizedTorus { z, ty })
    }

    pub fn principal(z: SiegelMatrix) -> Self {
        let ty = PolarizationType::principal(z.g());
        PolarizedTorus { z, ty }
    }

    pub fn g(&self) -> usize {
        self.z.g()
    }

    pub fn period(&self) -> &SiegelMatrix {
        &self.z
    }

    pub fn polarization_type(&self) -> &PolarizationType {
        &self.ty
    }

    pub fn is_principal(&self) -> bool {
        self.ty.is_principal()
    }

    /// `e(H) = d_g`.
    pub fn exponent(&self) -> u64 {
        self.ty.exponent()
    }

    /// `Π = [Z | Δ]`, whose columns are the lattice basis.
    pub fn period_matrix(&self) -> GaussianMatrix {
        self.z.matrix().hstack(&type_diagonal(&self.ty).to_gaussian())
    }

    pub fn gram(&self) -> IntMatrix {
        symplectic_gram(&self.ty)
    }

    /// Analytic representation `(Im Z)^{-1}` of `H`.
    pub fn hermitian_form(&self) -> RationalMatrix {
        self.z.imaginary().inverse().expect("Im Z is positive definite")
    }

    /// Points of `C^g` for lattice coordinate columns.
    pub fn image(&self, coords: &IntMatrix) -> Result<GaussianMatrix> {
        if coords.rows() != 2 * self.g() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate matrix has {} rows, lattice rank is {}",
                coords.rows(),
                2 * self.g()
            )));
        }
        Ok(&self.period_matrix() * &coords.to_gaussian())
    }
}

/// `[[0, -Δ], [Δ, 0]]` for `Δ = diag(D)`.
pub fn symplectic_gram(ty: &PolarizationType) -> IntMatrix {
    let g = ty.len();
    let delta = type_diagonal(ty);
    let zero = IntMatrix::zeros(g, g);
    zero.hstack(&-&delta).vstack(&delta.hstack(&zero))
}

/// `Some(D)` when `gram` is exactly `symplectic_gram(D)` for a divisor chain `D`.
pub(crate) fn standard_type(gram: &IntMatrix) -> Option<PolarizationType> {
    let n = gram.rows();
    if !gram.is_square() || n % 2 == 1 {
        return None;
    }
    let k = n / 2;
    let mut divisors = Vec::with_capacity(k);
    for i in 0..k {
        let d = u64::try_from(&gram[(k + i, i)]).ok().filter(|&d| d > 0)?;
        divisors.push(d);
    }
    let ty = PolarizationType::new(divisors).ok()?;
    (symplectic_gram(&ty) == *gram).then_some(ty)
}

/// A sublattice of a period lattice, normalized as a polarized torus of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    parent: PolarizedTorus,
    coords: IntMatrix,
    images: GaussianMatrix,
    complex_rank: usize,
    primitive: bool,
    basis: IntMatrix,
    sub_type: PolarizationType,
    sub_period: SiegelMatrix,
    analytic: GaussianMatrix,
}

impl LatticeEmbedding {
    pub fn parent(&self) -> &PolarizedTorus {
        &self.parent
    }

    /// Sublattice generators as given, in parent lattice coordinates.
    pub fn coords(&self) -> &IntMatrix {
        &self.coords
    }

    /// `k`, half the rank of the sublattice.
    pub fn k(&self) -> usize {
        self.coords.cols() / 2
    }

    pub fn images(&self) -> &GaussianMatrix {
        &self.images
    }

    pub fn complex_rank(&self) -> usize {
        self.complex_rank
    }

    /// The sublattice is saturated in the parent lattice.
    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Symplectic sublattice basis `coords * U`, with Gram `symplectic_gram(sub_type)`.
    pub fn symplectic_coords(&self) -> IntMatrix {
        &self.coords * &self.basis
    }

    /// The unimodular `U` relating [`Self::coords`] and [`Self::symplectic_coords`].
    pub fn basis_change(&self) -> &IntMatrix {
        &self.basis
    }

    /// Type of the restricted polarization.
    pub fn sub_type(&self) -> &PolarizationType {
        &self.sub_type
    }

    /// Period matrix of the sub-torus in the symplectic sublattice basis.
    pub fn sub_period(&self) -> &SiegelMatrix {
        &self.sub_period
    }

    pub fn sub_torus(&self) -> PolarizedTorus {
        PolarizedTorus { z: self.sub_period.clone(), ty: self.sub_type.clone() }
    }

    /// `A` (`g x k`) with `Π C U = A [Z_sub | Δ_sub]`.
    pub fn analytic(&self) -> &GaussianMatrix {
        &self.analytic
    }

    pub fn restricted_gram(&self) -> IntMatrix {
        restricted_gram(&self.parent, &self.coords)
    }
}

fn restricted_gram(parent: &PolarizedTorus, c: &IntMatrix) -> IntMatrix {
    &(&c.transpose() * &parent.gram()) * c
}

/// Validates `C` as a sublattice whose real span is a complex subspace and normalizes it.
pub fn embed(parent: &PolarizedTorus, c: &IntMatrix) -> Result<LatticeEmbedding> {
    let g = parent.g();
    if c.rows() != 2 * g || c.cols() % 2 == 1 || c.cols() > 2 * g {
        return Err(Error::DimensionMismatch(format!(
            "sublattice coordinates must be 2g x 2k with g = {g}, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let k = c.cols() / 2;
    let rational_rank = c.to_rational().rank();
    if rational_rank < 2 * k {
        return Err(Error::RankDeficient { expected: 2 * k, found: rational_rank });
    }
    let images = parent.image(c)?;
    let complex_rank = images.rank();
    if complex_rank != k {
        return Err(Error::NotComplexSubspace { expected: k, found: complex_rank });
    }
    let primitive = is_primitive(c);

    let gram = restricted_gram(parent, c);
    let (basis, sub_type) = match standard_type(&gram) {
        Some(ty) => (IntMatrix::identity(2 * k), ty),
        None => {
            let (u, ty) = symplectic_divisor_basis(&gram)?;
            // (a's, b's) -> (b's, a's): f-type vectors first
            let order: Vec<usize> = (k..2 * k).chain(0..k).collect();
            (u.select_columns(&order), ty)
        }
    };
    let w = &images * &basis.to_gaussian();
    let w_b = w.submatrix(0..g, 0..k);
    let w_a = w.submatrix(0..g, k..2 * k);
    let delta_inv = Matrix::diagonal(
        &sub_type.divisors().iter().map(|&d| Gaussian::real(BigRational::new(BigInt::one(), BigInt::from(d)))).collect::<Vec<_>>(),
    );
    let analytic = &w_a * &delta_inv;
    let z_sub = if k == 0 {
        GaussianMatrix::zeros(0, 0)
    } else {
        analytic.solve(&w_b).ok_or(Error::NotComplexSubspace { expected: k, found: complex_rank })?
    };
    let sub_period = SiegelMatrix::new(z_sub)?;
    Ok(LatticeEmbedding {
        parent: parent.clone(),
        coords: c.clone(),
        images,
        complex_rank,
        primitive,
        basis,
        sub_type,
        sub_period,
        analytic,
    })
}

/// Elementary divisors of `Cᵀ E C`.
pub fn restricted_type(e: &LatticeEmbedding) -> Result<PolarizationType> {
    let (_, ty) = symplectic_divisor_basis(&e.restricted_gram())?;
    Ok(ty)
}

/// `{v in Λ : E(v, C) = 0}` as an embedding of rank `2(g - k)`.
pub fn symplectic_complement(e: &LatticeEmbedding) -> Result<LatticeEmbedding> {
    let m = (&e.coords.transpose() * &e.parent.gram()).to_rational();
    let kernel = hermite_saturated_kernel(&m);
    embed(&e.parent, &kernel)
}

/// One named check of a [`CertificateReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`certify_nonsimple`], with the matrices needed to re-derive it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub expected_type: PolarizationType,
    pub computed_type: Option<PolarizationType>,
    pub rational_rank: usize,
    pub complex_rank: Option<usize>,
    pub restricted_gram: Option<IntMatrix>,
    pub images: Option<GaussianMatrix>,
}

impl CertificateReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Checks that `C` spans `Λ ∩ V` for a complex `k`-dimensional `V`, `0 < k < g`,
/// and that the restricted polarization has type `expected`.
pub fn certify_nonsimple(a: &PolarizedTorus, c: &IntMatrix, expected: &PolarizationType) -> CertificateReport {
    let g = a.g();
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });
    let mut report = CertificateReport {
        passed: false,
        checks: vec![],
        expected_type: expected.clone(),
        computed_type: None,
        rational_rank: 0,
        complex_rank: None,
        restricted_gram: None,
        images: None,
    };

    let shape_ok = c.rows() == 2 * g && c.cols().is_multiple_of(2) && c.cols() <= 2 * g;
    push("shape", shape_ok, format!("{}x{} coordinates for g = {g}", c.rows(), c.cols()));
    if !shape_ok {
        report.checks = checks;
        return report;
    }
    let k = c.cols() / 2;
    push("dimension", 0 < k && k < g, format!("k = {k}, g = {g}"));
    push("principal", a.is_principal(), format!("ambient type {}", a.polarization_type()));

    let rational_rank = c.to_rational().rank();
    report.rational_rank = rational_rank;
    let rank_ok = rational_rank == 2 * k;
    push(
        "rational-rank",
        rank_ok,
        if rank_ok { format!("rank {rational_rank}") } else { format!("RankDeficient: rank {rational_rank} < {}", 2 * k) },
    );

    let images = a.image(c).expect("shape checked");
    let complex_rank = images.rank();
    report.complex_rank = Some(complex_rank);
    report.images = Some(images);
    let complex_ok = complex_rank == k;
    push(
        "complex-subspace",
        complex_ok,
        if complex_ok {
            format!("complex rank {complex_rank}")
        } else {
            format!("NotComplexSubspace: complex rank {complex_rank}, expected {k}")
        },
    );

    let primitive = is_primitive(c);
    push("primitive", primitive, if primitive { "saturated".into() } else { "sublattice is not saturated".into() });

    let gram = restricted_gram(a, c);
    match symplectic_divisor_basis(&gram) {
        Ok((_, ty)) => {
            let ok = ty == *expected;
            push("restricted-type", ok, format!("computed {ty}, expected {expected}"));
            report.computed_type = Some(ty);
        }
        Err(err) => push("restricted-type", false, format!("{}: {err}", err.kind())),
    }
    report.restricted_gram = Some(gram);

    report.passed = checks.iter().all(|c| c.passed);
    report.checks = checks;
    report
}

/// Rational and analytic representations of an endomorphism, checked against each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismCandidate {
    pub rational_rep: RationalMatrix,
    pub analytic_rep: GaussianMatrix,
}

impl EndomorphismCandidate {
    /// From a rational representation, solving `Π R = A Π` for `A`.
    pub fn from_rational(parent: &PolarizedTorus, rational_rep: RationalMatrix) -> Result<Self> {
        let g = parent.g();
        let pi = parent.period_matrix();
        let moved = &pi * &rational_rep.to_gaussian();
        let delta_inv = Matrix::diagonal(
            &parent
                .polarization_type()
                .divisors()
                .iter()
                .map(|&d| Gaussian::real(BigRational::new(BigInt::one(), BigInt::from(d))))
                .collect::<Vec<_>>(),
        );
        let analytic_rep = &moved.submatrix(0..g, g..2 * g) * &delta_inv;
        if &analytic_rep * &pi != moved {
            return Err(Error::AnalyticMismatch);
        }
        Ok(EndomorphismCandidate { rational_rep, analytic_rep })
    }

    pub fn integral(&self) -> Option<IntMatrix> {
        self.rational_rep.to_integer()
    }
}

/// Projector onto the span of `m` along the span of `n` (together a basis of `Q^{2g}`).
fn projector(m: &IntMatrix, n: &IntMatrix) -> RationalMatrix {
    let b = m.hstack(n).to_rational();
    let r = m.cols();
    let keep = Matrix::diagonal(
        &(0..b.cols()).map(|i| if i < r { BigRational::one() } else { BigRational::zero() }).collect::<Vec<_>>(),
    );
    let inv = b.inverse().expect("a sublattice and its symplectic complement span the whole space");
    &(&b * &keep) * &inv
}

/// `Nm_M = e(M) ε_M` with `ε_M` the projector onto `M` along its complement.
pub fn norm_endomorphism(e: &LatticeEmbedding) -> Result<EndomorphismCandidate> {
    let complement = symplectic_complement(e)?;
    let p = projector(&e.coords, complement.coords());
    let exponent = BigRational::from_integer(BigInt::from(e.sub_type.exponent()));
    let nm = p.scale(&exponent);
    let nm_int = nm.to_integer().ok_or(Error::NotIntegral)?;
    if &nm_int * &nm_int != nm_int.scale(&BigInt::from(e.sub_type.exponent())) {
        return Err(Error::NotIdempotentScaled);
    }
    let gram = e.parent.gram();
    if &nm_int.transpose() * &gram != &gram * &nm_int {
        return Err(Error::NotSymmetricEndomorphism);
    }
    EndomorphismCandidate::from_rational(&e.parent, nm)
}

/// `(ε_M, ε_N)` with `ε_M + ε_N = 1`, `ε_M^2 = ε_M`.
pub fn idempotent_pair(e: &LatticeEmbedding) -> Result<(RationalMatrix, RationalMatrix)> {
    let nm = norm_endomorphism(e)?;
    let exponent = BigRational::from_integer(BigInt::from(e.sub_type.exponent()));
    let eps_m = nm.rational_rep.scale(&(BigRational::one() / exponent));
    let complement = symplectic_complement(e)?;
    let eps_n = projector(complement.coords(), &e.coords);
    debug_assert_eq!(&eps_m + &eps_n, RationalMatrix::identity(eps_m.rows()));
    Ok((eps_m, eps_n))
}
