use crate::field::Field;
use crate::matrix::{nullspace, rank, rref, Matrix, PolyMatrix};
use crate::poly::Poly;

/// A minimal polynomial basis of a right null space, one column vector per index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBasis<F: Field> {
    pub indices: Vec<i64>,
    /// `n × k` matrix whose columns are the basis vectors, in index order.
    pub basis: PolyMatrix<F>,
}

/// Right minimal indices and a minimal basis of `ker P`, given `rank P`.
///
/// Vectors of degree `≤ d` in the kernel are the null space of a block convolution
/// matrix; a basis vector of degree `d` is added whenever that null space is not
/// spanned by shifts of the vectors already found.
pub fn right_minimal_basis<F: Field>(p: &PolyMatrix<F>, rank_p: usize) -> MinimalBasis<F> {
    let (m, n) = (p.rows(), p.cols());
    let k = n - rank_p;
    let mut found: Vec<(usize, Vec<Poly<F>>)> = Vec::new();
    if k == 0 {
        return MinimalBasis {
            indices: Vec::new(),
            basis: Matrix::zeros(n, 0),
        };
    }
    let dp = p.degree().unwrap_or(0);
    let cap = rank_p * dp;
    let coeffs: Vec<Matrix<F>> = (0..=dp).map(|e| p.coeff_matrix(e)).collect();
    let mut d = 0;
    while found.len() < k {
        assert!(d <= cap, "minimal index search exceeded the degree bound");
        let unknowns = n * (d + 1);
        let eqs = m * (dp + d + 1);
        let conv = Matrix::from_fn(eqs, unknowns, |row, col| {
            let (e, i) = (row / m, row % m);
            let (l, j) = (col / n, col % n);
            match e.checked_sub(l) {
                Some(kk) if kk <= dp => coeffs[kk][(i, j)].clone(),
                _ => F::zero(),
            }
        });
        let null = nullspace(&conv);
        if null.len() > span_count(&found, d) {
            let mut span: Vec<Vec<F>> = Vec::new();
            for (deg, v) in &found {
                for sh in 0..=(d - deg) {
                    span.push(flatten(v, sh, d, n));
                }
            }
            let mut current = rank_of(&span, unknowns);
            for cand in null {
                span.push(cand.clone());
                let r = rank_of(&span, unknowns);
                if r > current {
                    current = r;
                    found.push((d, unflatten(&cand, d, n)));
                    if found.len() == k {
                        break;
                    }
                } else {
                    span.pop();
                }
            }
        }
        d += 1;
    }
    let indices = found.iter().map(|(d, _)| *d as i64).collect();
    let basis = Matrix::from_fn(n, k, |i, j| found[j].1[i].clone());
    MinimalBasis { indices, basis }
}

fn span_count<F: Field>(found: &[(usize, Vec<Poly<F>>)], d: usize) -> usize {
    found.iter().map(|(deg, _)| d - deg + 1).sum()
}

fn flatten<F: Field>(v: &[Poly<F>], shift: usize, d: usize, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n * (d + 1)];
    for (j, p) in v.iter().enumerate() {
        for (e, c) in p.coeffs().iter().enumerate() {
            out[(e + shift) * n + j] = c.clone();
        }
    }
    out
}

fn unflatten<F: Field>(x: &[F], d: usize, n: usize) -> Vec<Poly<F>> {
    (0..n)
        .map(|j| Poly::new((0..=d).map(|e| x[e * n + j].clone()).collect()))
        .collect()
}

fn rank_of<F: Field>(vs: &[Vec<F>], len: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut a = Matrix::from_fn(vs.len(), len, |i, j| vs[i][j].clone());
    rref(&mut a).len()
}

/// Highest-column-degree coefficient matrix of a basis (column `j` read at degree `indices[j]`).
pub fn leading_column_matrix<F: Field>(basis: &PolyMatrix<F>, indices: &[i64]) -> Matrix<F> {
    Matrix::from_fn(basis.rows(), basis.cols(), |i, j| basis[(i, j)].coeff(indices[j] as usize))
}

/// Column reduced: the leading column coefficient matrix has full column rank.
pub fn is_column_reduced<F: Field>(basis: &PolyMatrix<F>, indices: &[i64]) -> bool {
    rank(&leading_column_matrix(basis, indices)) == basis.cols()
}
