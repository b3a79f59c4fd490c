//! Structural data of polynomial and rational matrices, and feasibility of
//! completing a matrix by appending rows with prescribed structural data.

pub mod construct;
pub mod decisions;
pub mod error;
pub mod field;
pub mod json;
pub mod matrix;
pub mod matstruct;
pub mod oracle;
pub mod poly;
pub mod seqmaj;

pub use decisions::{decide, scan_infinite, Case, DecisionReport, MatrixKind, Prescription, Verdict};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, Fp, GaussianRational, Rational};
pub use matrix::{Matrix, PolyMatrix, RationalMatrix};
pub use matstruct::StructuralData;
pub use poly::{Poly, RationalFunction};

pub type QPoly = Poly<Rational>;
pub type QiPoly = Poly<GaussianRational>;
pub type FpPoly<const P: u64> = Poly<Fp<P>>;
