use crate::field::Field;
use crate::matrix::RationalMatrix;
use crate::poly::{factorize, Poly, RationalFunction};

/// Multiplicity of the irreducible `pi` in the nonzero polynomial `f`.
fn multiplicity<F: Field>(f: &Poly<F>, pi: &Poly<F>) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    loop {
        let (q, r) = f.div_rem(pi);
        if !r.is_zero() {
            return k;
        }
        f = q;
        k += 1;
    }
}

pub(super) fn valuation_at<F: Field>(f: &RationalFunction<F>, pi: &Poly<F>) -> i64 {
    multiplicity(f.num(), pi) - multiplicity(f.den(), pi)
}

pub(super) fn valuation_at_infinity<F: Field>(f: &RationalFunction<F>) -> i64 {
    f.den().deg() - f.num().deg()
}

/// Gaussian elimination with full pivoting by least valuation.
///
/// Every multiplier has nonnegative valuation, so each step is unimodular over the local
/// ring and the pivot valuations are the local invariant orders, already nondecreasing.
/// Returns the orders together with the product of the pivots.
pub(super) fn local_elimination<F: Field>(
    r: &RationalMatrix<F>,
    val: impl Fn(&RationalFunction<F>) -> i64,
) -> (Vec<i64>, RationalFunction<F>) {
    let (m, n) = (r.rows(), r.cols());
    let mut a = r.to_rows();
    let mut orders = Vec::new();
    let mut prod = RationalFunction::from_poly(Poly::one());
    for t in 0..m.min(n) {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, e) in row.iter().enumerate().skip(t) {
                if e.is_zero() {
                    continue;
                }
                let v = val(e);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t].clone();
        let pinv = p.inv().expect("nonzero pivot");
        for i in t + 1..m {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t] * &pinv;
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let d = &f * &a[t][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
            a[i][t] = RationalFunction::from_poly(Poly::zero());
        }
        orders.push(v);
        prod = &prod * &p;
    }
    (orders, prod)
}

/// Invariant rational functions `η_i/φ_i` assembled prime by prime.
///
/// Zeros divide the numerator of every nonzero maximal minor and poles divide the
/// common denominator, so only their irreducible factors need a local computation.
pub(super) fn invariant_rational_functions<F: Field>(
    r: &RationalMatrix<F>,
    lcd: &Poly<F>,
) -> Vec<RationalFunction<F>> {
    let (first, minor) = local_elimination(r, |f| f.num().deg() + f.den().deg());
    let rank = first.len();
    let mut nums = vec![Poly::<F>::one(); rank];
    let mut dens = vec![Poly::<F>::one(); rank];
    if rank == 0 {
        return Vec::new();
    }
    let mut primes: Vec<Poly<F>> = Vec::new();
    for f in [lcd, minor.num()] {
        if f.deg() > 0 {
            for (pi, _) in factorize(f).expect("nonzero").factors {
                if !primes.contains(&pi) {
                    primes.push(pi);
                }
            }
        }
    }
    for pi in &primes {
        let (orders, _) = local_elimination(r, |f| valuation_at(f, pi));
        debug_assert_eq!(orders.len(), rank);
        for (i, &v) in orders.iter().enumerate() {
            if v > 0 {
                nums[i] = &nums[i] * &pi.pow(v as u64);
            } else if v < 0 {
                dens[i] = &dens[i] * &pi.pow((-v) as u64);
            }
        }
    }
    nums.into_iter()
        .zip(dens)
        .map(|(a, b)| RationalFunction::new(a, b).expect("nonzero denominator"))
        .collect()
}
