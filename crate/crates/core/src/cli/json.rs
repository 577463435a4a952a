//! Exact JSON codec: rationals are strings `"p/q"` (or `"p"`), complex entries are
//! `{"re": .., "im": ..}`, integer matrices hold decimal strings, types are arrays of
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Gaussian, GaussianMatrix, IntMatrix, Matrix, RationalMatrix};
use crate::polarization::PolarizationType;
use crate::torus::CertificateReport;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let n: BigInt = n.parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
            let d: BigInt = d.parse().map_err(|_| parse_err(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(parse_err(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| parse_err(format!("non-integer number {n}; write rationals as strings")))?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_integer(v: &Value) -> Result<BigInt> {
    let r = parse_rational(v)?;
    if !r.is_integer() {
        return Err(parse_err(format!("expected an integer, got {r}")));
    }
    Ok(r.to_integer())
}

fn parse_gaussian(v: &Value) -> Result<Gaussian> {
    match v {
        Value::Object(m) => {
            if let Some(key) = m.keys().find(|k| !matches!(k.as_str(), "re" | "im" | "approx")) {
                return Err(parse_err(format!("unexpected key {key:?} in complex entry")));
            }
            let part = |k: &str| m.get(k).map(parse_rational).transpose().map(Option::unwrap_or_default);
            Ok(Gaussian::new(part("re")?, part("im")?))
        }
        other => Ok(Gaussian::real(parse_rational(other)?)),
    }
}

fn parse_grid<T: Clone>(v: &Value, entry: impl Fn(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let rows = v.as_array().ok_or_else(|| parse_err("a matrix is an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    let mut width = None;
    for row in rows {
        let row = row.as_array().ok_or_else(|| parse_err("a matrix row must be an array"))?;
        if *width.get_or_insert(row.len()) != row.len() {
            return Err(Error::DimensionMismatch("matrix rows have different lengths".into()));
        }
        out.push(row.iter().map(&entry).collect::<Result<Vec<T>>>()?);
    }
    Matrix::try_from_rows(out, width.unwrap_or(0))
}

pub fn parse_complex_matrix(v: &Value) -> Result<GaussianMatrix> {
    parse_grid(v, parse_gaussian)
}

pub fn parse_int_matrix(v: &Value) -> Result<IntMatrix> {
    parse_grid(v, parse_integer)
}

/// `x` rounded half away from zero to `digits` decimal places.
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let q = if BigInt::from(2) * r >= *scaled.denom() { q + 1 } else { q };
    let (int, frac) = q.div_rem(&scale);
    let sign = if x.is_negative() && !q_is_zero(&int, &frac) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

fn q_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Emitter; `float_digits` adds decimal renderings next to the exact values.
#[derive(Clone, Copy, Debug, Default)]
pub struct Codec {
    pub float_digits: Option<usize>,
}

impl Codec {
    pub fn rational(&self, x: &BigRational) -> Value {
        Value::String(x.to_string())
    }

    pub fn gaussian(&self, z: &Gaussian) -> Value {
        let mut m = Map::new();
        m.insert("re".into(), self.rational(&z.re));
        m.insert("im".into(), self.rational(&z.im));
        if let Some(d) = self.float_digits {
            let im = decimal(&z.im, d);
            let sep = if im.starts_with('-') { "" } else { "+" };
            m.insert("approx".into(), Value::String(format!("{}{sep}{im}i", decimal(&z.re, d))));
        }
        Value::Object(m)
    }

    pub fn complex_matrix(&self, m: &GaussianMatrix) -> Value {
        Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|z| self.gaussian(z)).collect())).collect())
    }

    pub fn rational_matrix(&self, m: &RationalMatrix) -> Value {
        Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| self.rational(x)).collect())).collect())
    }

    pub fn int_matrix(&self, m: &IntMatrix) -> Value {
        Value::Array(
            (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect())).collect(),
        )
    }

    pub fn ty(&self, t: &PolarizationType) -> Value {
        json!(t.divisors())
    }

    pub fn certificate(&self, r: &CertificateReport) -> Value {
        json!({
            "passed": r.passed,
            "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            "expected_type": self.ty(&r.expected_type),
            "computed_type": r.computed_type.as_ref().map(|t| self.ty(t)),
            "rational_rank": r.rational_rank,
            "complex_rank": r.complex_rank,
            "restricted_gram": r.restricted_gram.as_ref().map(|m| self.int_matrix(m)),
            "images": r.images.as_ref().map(|m| self.complex_matrix(m)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Gaussian::new(rat(1, 2), rat(-3, 4)), Gaussian::from_ints(0, 2)],
            vec![Gaussian::from_ints(0, 2), Gaussian::new(rat(-7, 3), rat(5, 1))],
        ]);
        let c = Codec::default();
        let v = c.complex_matrix(&m);
        assert_eq!(parse_complex_matrix(&v).unwrap(), m);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::to_string(&c.complex_matrix(&parse_complex_matrix(&serde_json::from_str(&text).unwrap()).unwrap())).unwrap(), text);

        let i = IntMatrix::from_i64_rows(&[&[1, -2], &[0, 30]]);
        assert_eq!(parse_int_matrix(&c.int_matrix(&i)).unwrap(), i);
    }

    #[test]
    fn lenient_entries() {
        let v: Value = serde_json::from_str(r#"[[{"im": "2"}, 1], ["1/2", {"re": "-1", "im": "4/2"}]]"#).unwrap();
        let m = parse_complex_matrix(&v).unwrap();
        assert_eq!(m[(0, 0)], Gaussian::from_ints(0, 2));
        assert_eq!(m[(1, 1)], Gaussian::from_ints(-1, 2));
        assert!(parse_complex_matrix(&serde_json::from_str(r#"[[1, 2], [3]]"#).unwrap()).is_err());
        assert!(parse_complex_matrix(&serde_json::from_str(r#"[["1/0"]]"#).unwrap()).is_err());
        assert!(parse_int_matrix(&serde_json::from_str(r#"[["1/2"]]"#).unwrap()).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(decimal(&rat(-5, 2), 0), "-3");
        assert_eq!(decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(decimal(&rat(7, 1), 1), "7.0");
    }
}
