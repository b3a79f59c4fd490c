//! Factorization over ℚ: reduction to a primitive integer polynomial, factorization
//! modulo a small prime, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational};
use crate::poly::Poly;

type ZPoly = Vec<BigInt>;

pub(crate) fn factor_squarefree(f: &Poly<Rational>) -> Result<Vec<Poly<Rational>>> {
    let z = primitive_integer(f);
    let mut out: Vec<Poly<Rational>> = zassenhaus(&z)?
        .into_iter()
        .map(|g| Poly::new(g.into_iter().map(BigRational::from_integer).collect()).monic())
        .collect();
    out.sort();
    Ok(out)
}

/// Integer multiple of `f` with content one and positive leading coefficient.
pub(crate) fn primitive_integer(f: &Poly<Rational>) -> ZPoly {
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        z.iter_mut().for_each(|c| *c = &*c / &g);
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        z.iter_mut().for_each(|c| *c = -&*c);
    }
    z
}

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a polynomial that is monic modulo `m`.
fn zdivrem_monic(a: &ZPoly, h: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = h.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= dh {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (dh..r.len()).rev() {
        let t = r[k].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (j, c) in h.iter().enumerate() {
            let idx = k - dh + j;
            r[idx] = (&r[idx] - &t * c).mod_floor(m);
        }
        q[k - dh] = t;
    }
    r.truncate(dh);
    (trim(q), trim(r))
}

/// Exact division over ℤ, `None` if `g` does not divide `f`.
fn zdiv_exact(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return if f.is_empty() { Some(Vec::new()) } else { None };
    }
    let lg = g.last()?;
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (dg..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (t, rem) = r[k].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in g.iter().enumerate() {
            let idx = k - dg + j;
            r[idx] -= &t * c;
        }
        q[k - dg] = t;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_z<const P: u64>(f: &Poly<Fp<P>>) -> ZPoly {
    f.coeffs().iter().map(|c| BigInt::from(c.value())).collect()
}

fn to_fp<const P: u64>(f: &ZPoly) -> Poly<Fp<P>> {
    let p = BigInt::from(P);
    Poly::new(
        f.iter()
            .map(|c| {
                let r: u64 = c.mod_floor(&p).try_into().unwrap_or(0);
                Fp::<P>::new(r)
            })
            .collect(),
    )
}

fn modp_factors<const P: u64>(f: &ZPoly) -> Option<Vec<Poly<Fp<P>>>> {
    let fp = to_fp::<P>(f);
    if fp.degree() != Some(f.len() - 1) {
        return None;
    }
    let m = fp.monic();
    if !m.gcd(&m.derivative()).is_one() {
        return None;
    }
    Some(Fp::<P>::factor_squarefree(&m).unwrap_or_default())
}

/// One quadratic Hensel step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` with `h` monic,
/// produce the same relations modulo `m²`.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let mm = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &mm);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &mm);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &mm);
    let h2 = zmod(&zadd(h, &r), &mm);
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &vec![BigInt::one()]), &mm);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &mm);
    let s2 = zmod(&zsub(s, &d), &mm);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &mm);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f)·Π us (mod P)` to monic factors modulo `modulus = P^(2^j)`.
fn lift_all<const P: u64>(f: &ZPoly, us: &[Poly<Fp<P>>], modulus: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().cloned().unwrap_or_else(BigInt::one);
    if us.len() == 1 {
        let inv = mod_inverse(&lc, modulus);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect(), modulus)];
    }
    let h0 = us[0].clone();
    let lp = to_fp::<P>(&vec![lc]);
    let g0 = us[1..].iter().fold(lp, |acc, u| &acc * u);
    let (_, s0, t0) = g0.ext_gcd(&h0);
    let (mut g, mut h, mut s, mut t) = (to_z(&g0), to_z(&h0), to_z(&s0), to_z(&t0));
    let mut m = BigInt::from(P);
    while &m < modulus {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let mut out = vec![zmod(&h, modulus)];
    out.extend(lift_all::<P>(&zmod(&g, modulus), &us[1..], modulus));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut pool = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().cloned().unwrap_or_else(BigInt::one);
            let mut cand = vec![lc];
            for &i in &idx {
                cand = zmod(&zmul(&cand, &pool[i]), modulus);
            }
            let cand = primitive_part(&zsym(&cand, modulus));
            if !cand.is_empty() {
                if let Some(q) = zdiv_exact(&f, &cand) {
                    found = Some((idx.clone(), cand, q));
                    break;
                }
            }
            if !next_subset(&mut idx, pool.len()) {
                break;
            }
        }
        match found {
            Some((idx, g, q)) => {
                out.push(g);
                f = q;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        out.push(primitive_part(&f));
    }
    out
}

fn primitive_part(f: &ZPoly) -> ZPoly {
    let g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    let sign = if f.last().is_some_and(|c| c.is_negative()) { -g } else { g };
    f.iter().map(|c| c / &sign).collect()
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Candidate {
    count: usize,
    run: Box<dyn Fn(&ZPoly) -> Vec<ZPoly>>,
}

fn candidate<const P: u64>(f: &ZPoly) -> Option<Candidate> {
    let us = modp_factors::<P>(f)?;
    let count = us.len();
    Some(Candidate {
        count,
        run: Box::new(move |f: &ZPoly| {
            let bound = coefficient_bound(f);
            let mut modulus = BigInt::from(P);
            while modulus <= bound {
                modulus = &modulus * &modulus;
            }
            let lifted = lift_all::<P>(f, &us, &modulus);
            recombine(f, lifted, &modulus)
        }),
    })
}

/// Twice an upper bound on the coefficients of `lc(f)·g` for any factor `g` of `f`.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let lc = f.last().map(|c| c.abs()).unwrap_or_else(BigInt::one);
    BigInt::from(2) * lc * (BigInt::one() << n) * (norm2.sqrt() + BigInt::one())
}

macro_rules! candidates {
    ($($p:literal)*) => {
        vec![$( candidate::<$p> as fn(&ZPoly) -> Option<Candidate> ),*]
    };
}

fn zassenhaus(f: &ZPoly) -> Result<Vec<ZPoly>> {
    if f.len() <= 2 {
        return Ok(vec![f.clone()]);
    }
    let cands = candidates!(3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97
        101 103 107 109 113 127 131 137 139 149 151 157 163 167 173 179 181 191 193 197 199);
    let best = cands
        .into_iter()
        .filter_map(|c| c(f))
        .take(4)
        .min_by_key(|c| c.count)
        .ok_or_else(|| Error::Unsupported("no suitable prime for modular factorization".into()))?;
    if best.count == 1 {
        return Ok(vec![f.clone()]);
    }
    Ok((best.run)(f))
}
