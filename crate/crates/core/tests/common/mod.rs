#![allow(dead_code)]

pub mod synth;

use rand::Rng;

use rowcomp::{Field, Matrix, Poly, PolyMatrix, RationalFunction, RationalMatrix};

pub fn random_poly<F: Field, R: Rng>(rng: &mut R, max_deg: usize, spread: u64) -> Poly<F> {
    let d = rng.gen_range(0..=max_deg);
    Poly::new((0..=d).map(|_| F::small_element(rng.gen_range(0..spread))).collect())
}

/// Random polynomial matrix; each entry is zero with probability `zero_prob`.
pub fn random_poly_matrix<F: Field, R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    max_deg: usize,
    spread: u64,
    zero_prob: f64,
) -> PolyMatrix<F> {
    Matrix::from_fn(m, n, |_, _| {
        if rng.gen_bool(zero_prob) {
            Poly::zero()
        } else {
            random_poly(rng, max_deg, spread)
        }
    })
}

/// Random matrix with a planted rank deficiency some of the time: a product of an
/// `m × k` and a `k × n` random factor.
pub fn random_low_rank<F: Field, R: Rng>(rng: &mut R, m: usize, n: usize, max_deg: usize, spread: u64) -> PolyMatrix<F> {
    let k = rng.gen_range(0..=m.min(n));
    let d1 = max_deg / 2;
    let d2 = max_deg - d1;
    let a = random_poly_matrix::<F, R>(rng, m, k, d1, spread, 0.2);
    let b = random_poly_matrix::<F, R>(rng, k, n, d2, spread, 0.2);
    if k == 0 {
        return Matrix::zeros(m, n);
    }
    a.mul(&b)
}

pub fn random_rational_matrix<F: Field, R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    max_deg: usize,
    spread: u64,
) -> RationalMatrix<F> {
    let num = if rng.gen_bool(0.5) {
        random_low_rank::<F, R>(rng, m, n, max_deg, spread)
    } else {
        random_poly_matrix::<F, R>(rng, m, n, max_deg, spread, 0.3)
    };
    num.map(|p| {
        let mut d = random_poly::<F, R>(rng, 2, spread);
        if d.is_zero() {
            d = Poly::one();
        }
        RationalFunction::new(p.clone(), d).unwrap()
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn det<F: Field>(a: &PolyMatrix<F>) -> Poly<F> {
    let n = a.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if a[(0, j)].is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = det(&a.submatrix(&rows, &cols));
        let term = &a[(0, j)] * &minor;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn minors<F: Field>(a: &PolyMatrix<F>, k: usize) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            out.push(det(&a.submatrix(&rs, &cs)));
        }
    }
    out
}

/// Invariant factors from determinantal divisors: `α_k = D_k / D_{k-1}`.
pub fn invariant_factors_by_minors<F: Field>(a: &PolyMatrix<F>) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    let mut prev = Poly::one();
    for k in 1..=a.rows().min(a.cols()) {
        let g = minors(a, k).iter().fold(Poly::zero(), |g, p| g.gcd(p));
        if g.is_zero() {
            break;
        }
        out.push(g.exact_div(&prev));
        prev = g;
    }
    out
}

/// Orders at infinity of a polynomial matrix from maximal minor degrees:
/// `Σ_{i≤k} p_i = −max deg of the k × k minors`.
pub fn orders_by_minors<F: Field>(a: &PolyMatrix<F>) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 0i64;
    for k in 1..=a.rows().min(a.cols()) {
        let Some(d) = minors(a, k).iter().filter_map(|p| p.degree()).max() else {
            break;
        };
        let total = -(d as i64);
        out.push(total - prev);
        prev = total;
    }
    out
}
