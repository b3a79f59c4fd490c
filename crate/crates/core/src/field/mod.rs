//! Exact coefficient fields.
//!
//! Every field used by the crate implements [`Field`], a numeric trait built on
//! `num-traits` with a few extras: inversion, a canonical total order (used for
//! deterministic output), JSON encoding and univariate factorization.

mod gaussian;
mod prime;
mod rational;

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::Poly;

pub use gaussian::GaussianRational;
pub use prime::{is_prime, Fp};
pub use rational::Rational;

/// Which base field a matrix or polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldDescriptor {
    Rationals,
    GaussianRationals,
    PrimeField(u64),
}

impl Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "q"),
            FieldDescriptor::GaussianRationals => write!(f, "qi"),
            FieldDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(FieldDescriptor::Rationals),
            "qi" => Ok(FieldDescriptor::GaussianRationals),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse {
                        path: "field".into(),
                        msg: format!("unknown field `{s}` (expected q, qi or fp:<p>)"),
                    })?;
                if !is_prime(p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                Ok(FieldDescriptor::PrimeField(p))
            }
        }
    }
}

/// Primes with a compiled-in field type, i.e. those reachable from a runtime descriptor.
pub const DISPATCH_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// An exact field.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn descriptor() -> FieldDescriptor;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// 0 for characteristic zero.
    fn characteristic() -> u64;

    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;

    /// The `k`-th element of a fixed enumeration of "small" elements.
    /// Index 0 is zero and index 1 is one; the enumeration covers finite fields completely.
    fn small_element(k: u64) -> Self;

    /// Nonzero coefficients tried by bounded searches, simplest first.
    fn search_coefficients(height: u32) -> Vec<Self>;

    /// Monic irreducible factors of a monic square-free polynomial of positive degree.
    fn factor_squarefree(f: &Poly<Self>) -> Result<Vec<Poly<Self>>>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value, path: &str) -> Result<Self>;
}

/// Runs `$body` with the type alias `$F` bound to the concrete field selected by a
/// [`FieldDescriptor`]. Evaluates to `Err(Error::Unsupported)` for primes outside
/// [`DISPATCH_PRIMES`].
#[macro_export]
macro_rules! with_field {
    ($desc:expr, $F:ident => $body:expr) => {{
        use $crate::field::FieldDescriptor as __D;
        match $desc {
            __D::Rationals => {
                type $F = $crate::field::Rational;
                Ok($body)
            }
            __D::GaussianRationals => {
                type $F = $crate::field::GaussianRational;
                Ok($body)
            }
            __D::PrimeField(p) => $crate::__with_prime!(p, $F => $body; 2 3 5 7 11 13 17 19 23 29 31),
        }
    }};
}

#[doc(hidden)]
#[macro_export]
macro_rules! __with_prime {
    ($p:expr, $F:ident => $body:expr; $($q:literal)*) => {
        match $p {
            $( $q => { type $F = $crate::field::Fp<$q>; Ok($body) } )*
            other => Err($crate::error::Error::Unsupported(format!(
                "prime field of order {other} has no compiled-in type; supported: 2..31"
            ))),
        }
    };
}
