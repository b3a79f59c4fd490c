use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::rational::parse_rational;
use super::{Field, FieldDescriptor, Rational};
use crate::error::{parse_err, Result};
use crate::poly::{factor, Poly};

/// Elements `re + im·i` of the Gaussian rationals ℚ(i).
///
/// The derived order (lexicographic on `(re, im)`) is only used for canonical output.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        GaussianRational::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.inv().expect("division by zero in ℚ(i)");
        self * inv
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl Field for GaussianRational {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::GaussianRationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational::from_rational(Rational::from_i64(n))
    }

    fn characteristic() -> u64 {
        0
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn small_element(k: u64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        // Interleave real parts and imaginary parts drawn from the rational enumeration.
        let a = Rational::small_element((k + 1) / 2);
        let b = Rational::small_element(k / 2);
        if k % 3 == 0 {
            GaussianRational::new(a, b)
        } else if k % 3 == 1 {
            GaussianRational::new(a, Rational::zero())
        } else {
            GaussianRational::new(Rational::zero(), a)
        }
    }

    fn search_coefficients(height: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for h in 1..=height.max(1) as i64 {
            let r = Rational::from_i64(h);
            out.push(GaussianRational::from_rational(r.clone()));
            out.push(GaussianRational::from_rational(-r.clone()));
            out.push(GaussianRational::new(Rational::zero(), r.clone()));
            out.push(GaussianRational::new(Rational::zero(), -r));
        }
        out
    }

    fn factor_squarefree(f: &Poly<Self>) -> Result<Vec<Poly<Self>>> {
        factor::gaussian::factor_squarefree(f)
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("re".into(), Value::String(self.re.to_string()));
        m.insert("im".into(), Value::String(self.im.to_string()));
        Value::Object(m)
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let part = |key: &str| -> Result<Rational> {
                    match m.get(key) {
                        None => Ok(Rational::zero()),
                        Some(x) => Rational::from_json(x, &format!("{path}.{key}")),
                    }
                };
                Ok(GaussianRational::new(part("re")?, part("im")?))
            }
            Value::String(s) => Ok(GaussianRational::from_rational(parse_rational(s, path)?)),
            _ => parse_err(path, "expected {\"re\": \"a/b\", \"im\": \"c/d\"}"),
        }
    }
}
