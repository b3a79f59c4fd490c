//! Factorization into monic irreducibles.

pub(crate) mod gaussian;
pub(crate) mod prime;
pub(crate) mod rational;

use super::Poly;
use crate::error::{domain, Result};
use crate::field::Field;

/// `f = unit · Π g^k` with monic irreducible `g`, listed in ascending polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self) -> Poly<F> {
        let mut acc = Poly::constant(self.unit.clone());
        for (g, k) in &self.factors {
            acc = &acc * &g.pow(*k as u64);
        }
        acc
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g_k, k)` with `f = Π g_k^k`,
/// each `g_k` monic, square-free and pairwise coprime.
pub fn squarefree_decomposition<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = F::characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).monic();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).monic();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).monic();
        i += 1;
    }
    if !c.is_one() {
        // Only reachable in characteristic p: what is left is a polynomial in s^p.
        debug_assert!(p > 0);
        let root = Poly::new(c.coeffs().iter().step_by(p).cloned().collect());
        for (g, k) in squarefree_decomposition(&root) {
            out.push((g, k * p));
        }
    }
    merge_equal(out)
}

fn merge_equal<F: Field>(mut v: Vec<(Poly<F>, usize)>) -> Vec<(Poly<F>, usize)> {
    v.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    for (g, k) in v {
        match out.iter_mut().find(|(_, kk)| *kk == k) {
            Some(e) => e.0 = &e.0 * &g,
            None => out.push((g, k)),
        }
    }
    out
}

/// Factorizes a nonzero polynomial into a unit times monic irreducibles.
pub fn factorize<F: Field>(f: &Poly<F>) -> Result<Factorization<F>> {
    if f.is_zero() {
        return domain("cannot factorize the zero polynomial");
    }
    let unit = f.lc();
    let mut factors = Vec::new();
    for (g, k) in squarefree_decomposition(&f.monic()) {
        let irr = if g.deg() == 1 { vec![g] } else { F::factor_squarefree(&g)? };
        for h in irr {
            factors.push((h, k));
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// A monic `τ` with `lo | τ | a` and `deg τ = w`, or `None` if no such divisor exists.
///
/// Among admissible divisors the one picked is deterministic: irreducible factors of
/// `a/lo` are taken greedily in ascending order.
pub fn divisor_of_degree<F: Field>(a: &Poly<F>, lo: &Poly<F>, w: usize) -> Result<Option<Poly<F>>> {
    if a.is_zero() || lo.is_zero() {
        return domain("divisor_of_degree needs nonzero polynomials");
    }
    if !lo.divides(a) {
        return domain("lower bound does not divide the upper bound");
    }
    let (dl, da) = (lo.deg() as usize, a.deg() as usize);
    if w < dl || w > da {
        return domain(format!("degree {w} outside [{dl}, {da}]"));
    }
    let q = a.exact_div(lo).monic();
    let fz = factorize(&q)?;
    let mut counts = vec![0usize; fz.factors.len()];
    if !pick(&fz.factors, 0, w - dl, &mut counts) {
        return Ok(None);
    }
    let mut tau = lo.monic();
    for ((g, _), c) in fz.factors.iter().zip(&counts) {
        tau = &tau * &g.pow(*c as u64);
    }
    Ok(Some(tau))
}

fn pick<F: Field>(fs: &[(Poly<F>, usize)], idx: usize, need: usize, counts: &mut [usize]) -> bool {
    if need == 0 {
        counts[idx..].iter_mut().for_each(|c| *c = 0);
        return true;
    }
    if idx == fs.len() {
        return false;
    }
    let d = fs[idx].0.deg() as usize;
    let max = fs[idx].1.min(need / d);
    for c in (0..=max).rev() {
        counts[idx] = c;
        if pick(fs, idx + 1, need - c * d, counts) {
            return true;
        }
    }
    counts[idx] = 0;
    false
}

/// `f mod m` raised to `e` by repeated squaring.
pub(crate) fn powmod<F: Field>(f: &Poly<F>, mut e: u64, m: &Poly<F>) -> Poly<F> {
    let mut base = f.rem(m);
    let mut acc = Poly::one().rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &base).rem(m);
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).rem(m);
        }
    }
    acc
}

