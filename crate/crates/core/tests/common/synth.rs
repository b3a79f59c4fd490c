use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rowcomp::decisions::{MatrixKind, Prescription};
use rowcomp::{Field, Poly, RationalFunction, StructuralData};

/// Synthetic structural data over any field, built from chains of powers of `s` and
/// `s + 1` so that factorization patterns do not depend on the field.
#[derive(Clone, Debug)]
pub struct Synth {
    pub eta: Vec<(u32, u32, u32)>,
    pub p: Vec<i64>,
    pub c: Vec<i64>,
    pub u: Vec<i64>,
    pub z: usize,
    pub x: usize,
    pub eps: Vec<(u32, u32, u32)>,
    pub q: Vec<i64>,
    pub d: Vec<i64>,
    pub v: Vec<i64>,
}

pub fn chain_elem<F: Field>((a, b, k): (u32, u32, u32)) -> RationalFunction<F> {
    let s = Poly::<F>::s();
    let s1 = Poly::from_ints(&[1, 1]);
    let num = &s.pow(a as u64) * &s1.pow(b as u64);
    let den = Poly::from_ints(&[2, 1]).pow(k as u64);
    RationalFunction::new(num, den).unwrap()
}

impl Synth {
    pub fn data<F: Field>(&self) -> StructuralData<F> {
        StructuralData {
            rank: self.eta.len(),
            irf: self.eta.iter().map(|&e| chain_elem(e)).collect(),
            inf_orders: self.p.clone(),
            cmi: self.c.clone(),
            rmi: self.u.clone(),
        }
    }

    pub fn pre<F: Field>(&self) -> Prescription<F> {
        Prescription::new(self.z, self.x, MatrixKind::Rational)
            .with_finite(self.eps.iter().map(|&e| chain_elem(e)).collect())
            .with_infinite(self.q.clone())
            .with_cmi(self.d.clone())
            .with_rmi(self.v.clone())
    }
}

pub fn sorted(mut v: Vec<i64>, desc: bool) -> Vec<i64> {
    v.sort_unstable();
    if desc {
        v.reverse();
    }
    v
}

/// Divisibility chain of length `len`: numerator exponents nondecreasing, the
/// denominator exponent nonincreasing and only where the numerator is trivial in `s + 2`.
pub fn random_chain(rng: &mut ChaCha8Rng, len: usize) -> Vec<(u32, u32, u32)> {
    let a = sorted((0..len).map(|_| rng.gen_range(0..3)).collect(), false);
    let b = sorted((0..len).map(|_| rng.gen_range(0..2)).collect(), false);
    let k = sorted((0..len).map(|_| rng.gen_range(0..2)).collect(), true);
    (0..len).map(|i| (a[i] as u32, b[i] as u32, k[i] as u32)).collect()
}

pub fn random_synth(rng: &mut ChaCha8Rng) -> Synth {
    let r = rng.gen_range(0..=3);
    let n = r + rng.gen_range(0..=2);
    let m = r + rng.gen_range(0..=2);
    let z = rng.gen_range(0..=2);
    let x = rng.gen_range(0..=z.min(n - r));
    let part = |rng: &mut ChaCha8Rng, len: usize| sorted((0..len).map(|_| rng.gen_range(0..4)).collect(), true);
    let ords = |rng: &mut ChaCha8Rng, len: usize| sorted((0..len).map(|_| rng.gen_range(-4..2)).collect(), false);
    Synth {
        eta: random_chain(rng, r),
        p: ords(rng, r),
        c: part(rng, n - r),
        u: part(rng, m - r),
        z,
        x,
        eps: random_chain(rng, r + x),
        q: ords(rng, r + x),
        d: part(rng, n - r - x),
        v: part(rng, m + z - r - x),
    }
}

/// Synthetic polynomial instance: no denominators, `A` in a range around zero.
pub fn poly_synth(rng: &mut ChaCha8Rng) -> Synth {
    let mut sy = random_synth(rng);
    for e in sy.eta.iter_mut().chain(sy.eps.iter_mut()) {
        e.2 = 0;
    }
    // Polynomial matrices have nonpositive orders.
    for o in sy.p.iter_mut().chain(sy.q.iter_mut()) {
        *o = -o.abs();
    }
    sy.p = sorted(sy.p, false);
    sy.q = sorted(sy.q, false);
    sy
}

