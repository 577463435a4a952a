use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A divisor chain `d1 | d2 | ... | dk` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PolarizationType {
    divisors: Vec<u64>,
}

impl PolarizationType {
    pub fn new(divisors: Vec<u64>) -> Result<Self> {
        if divisors.contains(&0) {
            return Err(Error::InvalidType("divisors must be positive".into()));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidType(format!("{divisors:?} is not a divisor chain")));
        }
        Ok(PolarizationType { divisors })
    }

    /// `(1, ..., 1)` of length `n`.
    pub fn principal(n: usize) -> Self {
        PolarizationType { divisors: vec![1; n] }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.divisors.iter().all(|&d| d == 1)
    }

    /// Largest divisor; the exponent of the polarization. 1 for the empty type.
    pub fn exponent(&self) -> u64 {
        self.divisors.last().copied().unwrap_or(1)
    }

    pub fn product(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// The divisors bigger than one, in order.
    pub fn nontrivial(&self) -> Vec<u64> {
        self.divisors.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Complementary type `(1, ..., 1, d1, ..., dk)` of length `g - k`.
    pub fn complementary(&self, g: usize) -> Result<Self> {
        let k = self.len();
        if 2 * k > g {
            return Err(Error::KTooLarge { g, k });
        }
        let mut divisors = vec![1; g - 2 * k];
        divisors.extend_from_slice(&self.divisors);
        Ok(PolarizationType { divisors })
    }
}

impl TryFrom<Vec<u64>> for PolarizationType {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PolarizationType::new(v)
    }
}

impl From<PolarizationType> for Vec<u64> {
    fn from(t: PolarizationType) -> Vec<u64> {
        t.divisors
    }
}

/// Comma syntax, e.g. `1,2,2`.
impl FromStr for PolarizationType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return PolarizationType::new(vec![]);
        }
        let divisors = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("type entry {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PolarizationType::new(divisors)
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.divisors.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Complementary type of `d` inside dimension `g`.
pub fn complementary_type(d: &PolarizationType, g: usize) -> Result<PolarizationType> {
    d.complementary(g)
}
