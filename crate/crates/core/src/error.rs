use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them, but a single enum keeps
/// propagation through the pipeline (`construct` calls `certify` calls `embed`)
/// free of conversion boilerplate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not alternating")]
    NotAlternating,
    #[error("alternating form is degenerate")]
    DegenerateForm,
    #[error("invalid polarization type: {0}")]
    InvalidType(String),
    #[error("module types differ")]
    TypeMismatch,
    #[error("map is not antisymplectic")]
    NotAntisymplectic,
    #[error("map is not well defined modulo the element orders")]
    NotWellDefined,
    #[error("enumeration bound exceeded: product of divisors {product} > {bound}")]
    BoundExceeded { product: u64, bound: u64 },
    #[error("subgroup is not an allowed isotropic subgroup")]
    NotAllowed,
    #[error("k = {k} exceeds g/2 for g = {g}")]
    KTooLarge { g: usize, k: usize },
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("matrix is not in the Siegel upper half space: {0}")]
    NotSiegel(String),
    #[error("sublattice has rational rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("sublattice spans a complex subspace of dimension {found}, expected {expected}")]
    NotComplexSubspace { expected: usize, found: usize },
    #[error("endomorphism is not integral on the lattice")]
    NotIntegral,
    #[error("endomorphism does not satisfy Nm^2 = e Nm")]
    NotIdempotentScaled,
    #[error("endomorphism is not symmetric for the polarization")]
    NotSymmetricEndomorphism,
    #[error("rational representation does not commute with the period matrix")]
    AnalyticMismatch,
    #[error("period matrix does not satisfy the locus equations")]
    EquationsNotSatisfied,
    #[error("types are not complementary: {0}")]
    TypesNotComplementary(String),
    #[error("alternating form on the enlarged lattice is not integral")]
    NonIntegralGram,
    #[error("induced polarization is not principal: {0}")]
    NotPrincipal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Machine-readable kind, stable across releases; used by the JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotAlternating => "NotAlternating",
            Error::DegenerateForm => "DegenerateForm",
            Error::InvalidType(_) => "InvalidType",
            Error::TypeMismatch => "TypeMismatch",
            Error::NotAntisymplectic => "NotAntisymplectic",
            Error::NotWellDefined => "NotWellDefined",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NotAllowed => "NotAllowed",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::InvalidDimensions(_) => "InvalidDimensions",
            Error::NotSiegel(_) => "NotSiegel",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::NotComplexSubspace { .. } => "NotComplexSubspace",
            Error::NotIntegral => "NotIntegral",
            Error::NotIdempotentScaled => "NotIdempotentScaled",
            Error::NotSymmetricEndomorphism => "NotSymmetric",
            Error::AnalyticMismatch => "AnalyticMismatch",
            Error::EquationsNotSatisfied => "EquationsNotSatisfied",
            Error::TypesNotComplementary(_) => "TypesNotComplementary",
            Error::NonIntegralGram => "NonIntegralGram",
            Error::NotPrincipal(_) => "NotPrincipal",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
