//! Finite and infinite structure and minimal indices of polynomial and rational matrices.

mod local;
mod minimal;
mod smith;

use crate::error::{domain, Result};
use crate::field::Field;
use crate::matrix::{PolyMatrix, RationalMatrix};
use crate::poly::{Poly, RationalFunction};

pub use minimal::{is_column_reduced, leading_column_matrix, right_minimal_basis, MinimalBasis};
pub use smith::{poly_rank, smith_form, SmithForm};

/// The complete structural data of a matrix: rank, invariant rational functions
/// `η_i/φ_i`, invariant orders at infinity, and column and row minimal indices.
///
/// Orders are kept nondecreasing and minimal indices nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructuralData<F: Field> {
    pub rank: usize,
    pub irf: Vec<RationalFunction<F>>,
    pub inf_orders: Vec<i64>,
    pub cmi: Vec<i64>,
    pub rmi: Vec<i64>,
}

impl<F: Field> StructuralData<F> {
    pub fn rows(&self) -> usize {
        self.rank + self.rmi.len()
    }

    pub fn cols(&self) -> usize {
        self.rank + self.cmi.len()
    }

    /// True when every invariant rational function is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.irf.iter().all(|f| f.is_poly())
    }

    pub fn numerators(&self) -> Vec<Poly<F>> {
        self.irf.iter().map(|f| f.num().clone()).collect()
    }

    pub fn denominators(&self) -> Vec<Poly<F>> {
        self.irf.iter().map(|f| f.den().clone()).collect()
    }

    /// `Σ cmi + Σ rmi + Σ orders + Σ deg η − Σ deg φ`, which vanishes for every matrix.
    pub fn index_sum(&self) -> i64 {
        self.cmi.iter().sum::<i64>()
            + self.rmi.iter().sum::<i64>()
            + self.inf_orders.iter().sum::<i64>()
            + self.irf.iter().map(|f| f.deg()).sum::<i64>()
    }

    pub fn transpose(&self) -> Self {
        StructuralData {
            rank: self.rank,
            irf: self.irf.clone(),
            inf_orders: self.inf_orders.clone(),
            cmi: self.rmi.clone(),
            rmi: self.cmi.clone(),
        }
    }
}

/// Rank of a polynomial matrix over `F(s)`.
pub fn rank<F: Field>(p: &PolyMatrix<F>) -> usize {
    poly_rank(p)
}

pub fn rational_rank<F: Field>(r: &RationalMatrix<F>) -> usize {
    poly_rank(&r.scale_to_poly(&r.lcd()))
}

/// Smith–McMillan form data: least common denominator and invariant rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithMcMillan<F: Field> {
    pub lcd: Poly<F>,
    pub factors: Vec<RationalFunction<F>>,
}

pub fn smith_mcmillan<F: Field>(r: &RationalMatrix<F>) -> SmithMcMillan<F> {
    let lcd = r.lcd();
    let factors = local::invariant_rational_functions(r, &lcd);
    SmithMcMillan { lcd, factors }
}

/// Invariant orders at infinity, nondecreasing: the local invariant orders at `s = ∞`,
/// where a rational function `n/d` has valuation `deg d − deg n`.
pub fn infinite_orders<F: Field>(r: &RationalMatrix<F>) -> Vec<i64> {
    local::local_elimination(r, local::valuation_at_infinity).0
}

/// Column and row minimal indices (nonincreasing) with minimal bases of the right and
/// left null spaces. The left basis is returned as the columns of an `m × k` matrix `N`
/// with `Nᵀ R = 0`.
pub fn minimal_indices<F: Field>(r: &RationalMatrix<F>) -> (MinimalBasis<F>, MinimalBasis<F>) {
    // Scaling rows (columns) by their own denominators keeps the right (left) null space.
    let rows = clear_row_denominators(r);
    let cols = clear_row_denominators(&r.transpose());
    let rk = poly_rank(&rows);
    let right = sorted_basis(right_minimal_basis(&rows, rk));
    let left = sorted_basis(right_minimal_basis(&cols, rk));
    (right, left)
}

fn clear_row_denominators<F: Field>(r: &RationalMatrix<F>) -> PolyMatrix<F> {
    let lcds: Vec<Poly<F>> = (0..r.rows())
        .map(|i| r.row(i).iter().fold(Poly::one(), |acc, f| acc.lcm(f.den())))
        .collect();
    PolyMatrix::from_fn(r.rows(), r.cols(), |i, j| {
        let f = &r[(i, j)];
        &f.num().clone() * &lcds[i].exact_div(f.den())
    })
}

fn sorted_basis<F: Field>(b: MinimalBasis<F>) -> MinimalBasis<F> {
    let mut order: Vec<usize> = (0..b.indices.len()).collect();
    order.sort_by(|&i, &j| b.indices[j].cmp(&b.indices[i]).then(i.cmp(&j)));
    let rows: Vec<usize> = (0..b.basis.rows()).collect();
    MinimalBasis {
        indices: order.iter().map(|&i| b.indices[i]).collect(),
        basis: b.basis.submatrix(&rows, &order),
    }
}

pub fn structural_data<F: Field>(r: &RationalMatrix<F>) -> StructuralData<F> {
    let sm = smith_mcmillan(r);
    let inf_orders = infinite_orders(r);
    let (right, left) = minimal_indices(r);
    StructuralData {
        rank: sm.factors.len(),
        irf: sm.factors,
        inf_orders,
        cmi: right.indices,
        rmi: left.indices,
    }
}

pub fn poly_structural_data<F: Field>(p: &PolyMatrix<F>) -> StructuralData<F> {
    structural_data(&p.to_rational())
}

/// Structural data of `p·R` derived from that of `R`: invariant factors multiplied by
/// `p`, orders shifted by `−deg p`, minimal indices unchanged.
pub fn scale_by_poly<F: Field>(data: &StructuralData<F>, p: &Poly<F>) -> Result<StructuralData<F>> {
    if p.is_zero() {
        return domain("cannot scale by the zero polynomial");
    }
    let pm = p.monic();
    Ok(StructuralData {
        rank: data.rank,
        irf: data.irf.iter().map(|f| f.scale_poly(&pm)).collect(),
        inf_orders: data.inf_orders.iter().map(|q| q - p.deg()).collect(),
        cmi: data.cmi.clone(),
        rmi: data.rmi.clone(),
    })
}

/// Inverse of [`scale_by_poly`].
pub fn unscale<F: Field>(data: &StructuralData<F>, p: &Poly<F>) -> Result<StructuralData<F>> {
    if p.is_zero() {
        return domain("cannot unscale by the zero polynomial");
    }
    let inv = RationalFunction::new(Poly::one(), p.monic())?;
    Ok(StructuralData {
        rank: data.rank,
        irf: data.irf.iter().map(|f| f * &inv).collect(),
        inf_orders: data.inf_orders.iter().map(|q| q + p.deg()).collect(),
        cmi: data.cmi.clone(),
        rmi: data.rmi.clone(),
    })
}

/// Irreducible basis: the basis matrix has full column rank at every point of the
/// algebraic closure, i.e. all its invariant factors are one.
pub fn is_irreducible<F: Field>(basis: &PolyMatrix<F>) -> bool {
    let sf = smith_form(basis, false);
    sf.invariant_factors.len() == basis.cols() && sf.invariant_factors.iter().all(|a| a.is_one())
}

/// Checks that `basis` is a minimal basis of the right null space of `p`.
pub fn is_minimal_basis<F: Field>(p: &PolyMatrix<F>, b: &MinimalBasis<F>) -> bool {
    let prod = p.mul(&b.basis);
    let n_expected = p.cols() - poly_rank(p);
    prod.entries().all(|x| x.is_zero())
        && b.basis.cols() == n_expected
        && (0..b.basis.cols()).all(|j| {
            (0..b.basis.rows()).filter_map(|i| b.basis[(i, j)].degree()).max() == Some(b.indices[j] as usize)
        })
        && is_column_reduced(&b.basis, &b.indices)
        && is_irreducible(&b.basis)
}

