//! Exact period-matrix computations for non-simple principally polarized
//! abelian varieties.
//!
//! A polarized complex torus is presented as `C^g / <Z D>` with `Z` in the Siegel
//! upper half space and `D` a divisor chain. All arithmetic is over `Z`, `Q` and
//! `Q(i)`, so every membership statement produced here is a certificate, not an
//! approximation.
//!
//! * [`linalg`]: Smith / Hermite normal forms, saturated kernels, symplectic bases.
//! * [`finite`]: finite symplectic modules `K(H)`, antisymplectic maps, allowed subgroups.
//! * [`torus`]: period lattices, sublattice embeddings, complements, norm-endomorphisms.
//! * [`humbert`]: locus equations, explicit members, the genus-2 singular relations.
//! * [`quotient`]: products `M x N` and their quotients by allowed subgroups.
//! * [`cli`]: the JSON codec and command dispatcher behind the `nonsimple` binary.

pub mod cli;
pub mod error;
pub mod finite;
pub mod humbert;
pub mod linalg;
pub mod polarization;
pub mod quotient;
pub mod sample;
pub mod torus;

pub use error::{Error, Result};
pub use polarization::{complementary_type, PolarizationType};
