//! Dense matrices and linear algebra over a field.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::field::Field;
use crate::poly::{Poly, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix<F> = Matrix<Poly<F>>;
pub type RationalMatrix<F> = Matrix<RationalFunction<F>>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics unless all rows have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn empty(cols: usize) -> Self {
        Matrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// `[self; below]`; panics on a column mismatch.
    pub fn vstack(&self, below: &Matrix<T>) -> Self {
        assert_eq!(self.cols, below.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<Poly<F>> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(), |acc, k| &acc + &(&self[(i, k)] * &o[(k, j)]))
        })
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.data.iter().filter_map(|p| p.degree()).max()
    }

    /// Coefficient matrix of `s^k`.
    pub fn coeff_matrix(&self, k: usize) -> Matrix<F> {
        self.map(|p| p.coeff(k))
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        self.map(|x| x * p)
    }

    pub fn to_rational(&self) -> RationalMatrix<F> {
        self.map(|p| RationalFunction::from_poly(p.clone()))
    }
}

impl<F: Field> Matrix<RationalFunction<F>> {
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(RationalFunction::zero(), |acc, k| &acc + &(&self[(i, k)] * &o[(k, j)]))
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(|x| x.is_poly())
    }

    /// Monic least common denominator of the entries.
    pub fn lcd(&self) -> Poly<F> {
        self.data.iter().fold(Poly::one(), |l, x| l.lcm(x.den()))
    }

    /// `p · self`, which must be polynomial; panics otherwise.
    pub fn scale_to_poly(&self, p: &Poly<F>) -> PolyMatrix<F> {
        self.map(|x| {
            let y = x.scale_poly(p);
            assert!(y.is_poly(), "scaling does not clear denominators");
            y.num().clone()
        })
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        self.map(|x| x.scale_poly(p))
    }

    pub fn divide(&self, p: &Poly<F>) -> Self {
        let inv = RationalFunction::new(Poly::one(), p.clone()).expect("nonzero divisor");
        self.map(|x| x * &inv)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(a: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..a.cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                let v = a[(r, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - f.clone() * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &Matrix<F>) -> usize {
    let mut b = a.clone();
    rref(&mut b).len()
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn nullspace<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let mut b = a.clone();
    let pivots = rref(&mut b);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); a.cols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -b[(r, f)].clone();
            }
            v
        })
        .collect()
}
