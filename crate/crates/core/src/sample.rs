//! Seeded random inputs: Siegel matrices of bounded height, divisor chains, and
//! random members of the locus.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::humbert::{construct_member, Member};
use crate::linalg::{Gaussian, Matrix};
use crate::polarization::PolarizationType;
use crate::torus::SiegelMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A rational with numerator and denominator of absolute value at most `height`.
pub fn random_rational<R: Rng>(rng: &mut R, height: u64) -> BigRational {
    let h = height.max(1) as i64;
    ratio(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

/// Random `n x n` Siegel matrix with entries of height at most `height`.
///
/// The imaginary part is strictly diagonally dominant: integer diagonal in
/// `[ceil(h/2), h]`, off-diagonal entries of absolute value below `h / (2(n-1))`.
pub fn random_siegel<R: Rng>(rng: &mut R, n: usize, height: u64) -> SiegelMatrix {
    let h = height.max(1) as i64;
    let mut z = Matrix::from_fn(n, n, |_, _| Gaussian::from_ints(0, 0));
    for i in 0..n {
        for j in i..n {
            let re = random_rational(rng, height);
            let im = if i == j {
                ratio(rng.gen_range((h + 1) / 2..=h), 1)
            } else {
                // |p/q| < h / (2(n-1))  <=>  2 (n-1) |p| < h q
                let q = rng.gen_range(1..=h);
                let bound = (h * q - 1) / (2 * (n as i64 - 1));
                let bound = bound.min(h);
                ratio(rng.gen_range(-bound..=bound), q)
            };
            z[(i, j)] = Gaussian::new(re.clone(), im.clone());
            z[(j, i)] = Gaussian::new(re, im);
        }
    }
    SiegelMatrix::new(z).expect("diagonally dominant imaginary part")
}

/// A divisor chain of length `k` with entries at most `max_divisor`.
pub fn random_type<R: Rng>(rng: &mut R, k: usize, max_divisor: u64) -> PolarizationType {
    let mut divisors = Vec::with_capacity(k);
    let mut last = 1u64;
    for _ in 0..k {
        let options: Vec<u64> = (1..=max_divisor / last).map(|m| m * last).collect();
        last = options[rng.gen_range(0..options.len())];
        divisors.push(last);
    }
    PolarizationType::new(divisors).expect("built as a chain")
}

/// Random member of the locus from random `Z_M`, `Z_N` of bounded height.
pub fn sample_member(g: usize, ty: &PolarizationType, seed: u64, height: u64) -> Result<(SiegelMatrix, SiegelMatrix, Member)> {
    let k = ty.len();
    let mut r = rng(seed);
    let z_m = random_siegel(&mut r, k, height);
    let z_n = random_siegel(&mut r, g.saturating_sub(k), height);
    let member = construct_member(&z_m, &z_n, ty)?;
    Ok((z_m, z_n, member))
}
