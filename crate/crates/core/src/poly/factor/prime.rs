//! Distinct-degree and equal-degree factorization over prime fields.

use super::powmod;
use crate::field::Fp;
use crate::poly::Poly;

pub(crate) fn factor_squarefree<const P: u64>(f: &Poly<Fp<P>>) -> Vec<Poly<Fp<P>>> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = Poly::<Fp<P>>::s();
    let mut h = x.clone();
    let mut d = 1usize;
    while let Some(dr) = rest.degree() {
        if dr < 2 * d {
            if dr > 0 {
                out.push(rest.clone());
            }
            break;
        }
        h = powmod(&h, P, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            equal_degree(&g, d, &mut out);
            rest = rest.exact_div(&g).monic();
            h = h.rem(&rest);
        }
        d += 1;
    }
    out.sort();
    out
}

/// Splits a product of distinct irreducibles of degree `d`.
fn equal_degree<const P: u64>(g: &Poly<Fp<P>>, d: usize, out: &mut Vec<Poly<Fp<P>>>) {
    let n = g.deg() as usize;
    if n == d {
        out.push(g.clone());
        return;
    }
    // Deterministic sequence of trial polynomials: the base-P digits of k, lowest first.
    let mut k: u64 = P;
    loop {
        let a = trial_poly::<P>(k, n);
        k += 1;
        if a.is_constant() {
            continue;
        }
        let b = if P == 2 {
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..d {
                t = (&t * &t).rem(g);
                acc = &acc + &t;
            }
            acc
        } else {
            let mut t = a.rem(g);
            let mut norm = t.clone();
            for _ in 1..d {
                t = powmod(&t, P, g);
                norm = (&norm * &t).rem(g);
            }
            &powmod(&norm, (P - 1) / 2, g) - &Poly::one()
        };
        let u = b.gcd(g);
        if let Some(du) = u.degree() {
            if du > 0 && du < n {
                equal_degree(&u, d, out);
                equal_degree(&g.exact_div(&u).monic(), d, out);
                return;
            }
        }
    }
}

fn trial_poly<const P: u64>(mut k: u64, n: usize) -> Poly<Fp<P>> {
    let mut cs = Vec::new();
    while k > 0 && cs.len() < n {
        cs.push(Fp::<P>::new(k % P));
        k /= P;
    }
    Poly::new(cs)
}
