use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use super::{Field, FieldDescriptor};
use crate::error::{parse_err, Result};
use crate::poly::{factor, Poly};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

pub(crate) fn parse_rational(s: &str, path: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad(path, s))?;
            let b: BigInt = b.trim().parse().map_err(|_| bad(path, s))?;
            if b.is_zero() {
                return parse_err(path, "zero denominator");
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad(path, s))?),
    };
    Ok(parsed)
}

fn bad(path: &str, s: &str) -> crate::error::Error {
    crate::error::Error::Parse {
        path: path.to_string(),
        msg: format!("`{s}` is not a rational number"),
    }
}

impl Field for BigRational {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic() -> u64 {
        0
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn small_element(k: u64) -> Self {
        // 0, 1, -1, 2, -2, ... for the first few indices, then signed fractions a/b.
        if k == 0 {
            return Self::zero();
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let m = k.div_ceil(2) as i64;
        if m <= 6 {
            return Self::from_i64(sign * m);
        }
        let den = 2 + (m % 3);
        let num = 1 + m / 3;
        BigRational::new(BigInt::from(sign * num), BigInt::from(den))
    }

    fn search_coefficients(height: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for h in 1..=height.max(1) as i64 {
            out.push(Self::from_i64(h));
            out.push(Self::from_i64(-h));
        }
        out
    }

    fn factor_squarefree(f: &Poly<Self>) -> Result<Vec<Poly<Self>>> {
        factor::rational::factor_squarefree(f)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s, path),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap_or(0))),
            _ => parse_err(path, "expected a rational as a string \"a/b\""),
        }
    }
}

