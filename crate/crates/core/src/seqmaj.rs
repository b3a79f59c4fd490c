//! Integer sequences with infinite sentinels, majorization and generalized majorization.
//!
//! Sequences are 1-indexed. A nonincreasing sequence `a_1 ≥ … ≥ a_m` is extended by
//! `a_i = +∞` for `i < 1` and `a_i = −∞` for `i > m`; a nondecreasing one the other
//! way round. Empty sums are zero.

use crate::error::{domain, Result};
use crate::field::Field;
use crate::poly::Poly;

/// An integer or one of the two infinities, ordered `−∞ < n < +∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Nonincreasing,
    Nondecreasing,
}

/// A finite monotone integer sequence with the sentinel extension described above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeq {
    values: Vec<i64>,
    orientation: Orientation,
}

impl IntSeq {
    pub fn new(values: Vec<i64>, orientation: Orientation) -> Result<Self> {
        let ok = values.windows(2).all(|w| match orientation {
            Orientation::Nonincreasing => w[0] >= w[1],
            Orientation::Nondecreasing => w[0] <= w[1],
        });
        if !ok {
            return domain(format!("{values:?} is not {orientation:?}"));
        }
        Ok(IntSeq { values, orientation })
    }

    pub fn nonincreasing(values: Vec<i64>) -> Result<Self> {
        IntSeq::new(values, Orientation::Nonincreasing)
    }

    pub fn nondecreasing(values: Vec<i64>) -> Result<Self> {
        IntSeq::new(values, Orientation::Nondecreasing)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The `i`-th term (1-based) with sentinels outside `1..=len`.
    pub fn at(&self, i: i64) -> ExtInt {
        at(&self.values, i, self.orientation)
    }
}

pub(crate) fn at(v: &[i64], i: i64, o: Orientation) -> ExtInt {
    if i < 1 {
        match o {
            Orientation::Nonincreasing => ExtInt::PosInf,
            Orientation::Nondecreasing => ExtInt::NegInf,
        }
    } else if i as usize > v.len() {
        match o {
            Orientation::Nonincreasing => ExtInt::NegInf,
            Orientation::Nondecreasing => ExtInt::PosInf,
        }
    } else {
        ExtInt::Fin(v[i as usize - 1])
    }
}

/// `Σ_{i=lo}^{hi} f(i)`, zero when `hi < lo`.
pub fn sum_range(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> i64 {
    (lo..=hi).map(f).sum()
}

/// `Σ_{i≤k} v_i` for `0 ≤ k ≤ len`; nonpositive `k` gives the empty sum.
pub fn prefix_sum(v: &[i64], k: i64) -> i64 {
    if k <= 0 {
        return 0;
    }
    let k = (k as usize).min(v.len());
    v[..k].iter().sum()
}

/// `g ≺ a`: equal lengths, `Σ_{i≤k} g_i ≤ Σ_{i≤k} a_i` for `k < m` and equal totals.
pub fn majorizes(g: &[i64], a: &[i64]) -> Result<bool> {
    if g.len() != a.len() {
        return domain(format!("majorization needs equal lengths ({} ≠ {})", g.len(), a.len()));
    }
    let m = g.len() as i64;
    Ok((1..m).all(|k| prefix_sum(g, k) <= prefix_sum(a, k)) && prefix_sum(g, m) == prefix_sum(a, m))
}

/// `h_j = min{ i : d_{i−j+1} < g_i }` for `d` nonincreasing of length `m`, `g` of
/// length `m + s` and `1 ≤ j ≤ s`; always `j ≤ h_j ≤ m + j`.
pub fn h_index(d: &[i64], g: &[i64], j: usize) -> Result<usize> {
    let m = d.len();
    if j == 0 || g.len() < m + j {
        return domain(format!("h_{j} needs 1 ≤ j ≤ len g − len d = {}", g.len() as i64 - m as i64));
    }
    for i in 1..=m + j {
        let di = at(d, i as i64 - j as i64 + 1, Orientation::Nonincreasing);
        if di < ExtInt::Fin(g[i - 1]) {
            return Ok(i);
        }
    }
    unreachable!("d_{{m+1}} = −∞ bounds the search")
}

/// Clause-by-clause outcome of `g ≺′ (d, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMajorization {
    /// `d_i ≥ g_{i+s}` for all `i ≤ m`.
    pub interlace: bool,
    /// One entry per `j = 1..=s`: `(h_j, Σ_{i≤h_j} g_i − Σ_{i≤h_j−j} d_i, Σ_{i≤j} a_i)`.
    pub partial: Vec<(usize, i64, i64)>,
    /// `Σ g = Σ d + Σ a`.
    pub total: bool,
}

impl GenMajorization {
    pub fn holds(&self) -> bool {
        self.interlace && self.total && self.partial.iter().all(|(_, l, r)| l <= r)
    }
}

/// Evaluates `g ≺′ (d, a)` with `len g = len d + len a`. The sequences need not be monotone;
/// the sentinel conventions only concern `d`.
pub fn gen_majorization(g: &[i64], d: &[i64], a: &[i64]) -> Result<GenMajorization> {
    let (m, s) = (d.len(), a.len());
    if g.len() != m + s {
        return domain(format!(
            "generalized majorization needs len g = len d + len a ({} ≠ {} + {})",
            g.len(),
            m,
            s
        ));
    }
    let interlace = (0..m).all(|i| d[i] >= g[i + s]);
    let mut partial = Vec::with_capacity(s);
    for j in 1..=s {
        let h = h_index(d, g, j)?;
        let lhs = prefix_sum(g, h as i64) - prefix_sum(d, h as i64 - j as i64);
        partial.push((h, lhs, prefix_sum(a, j as i64)));
    }
    let total = g.iter().sum::<i64>() == d.iter().sum::<i64>() + a.iter().sum::<i64>();
    Ok(GenMajorization {
        interlace,
        partial,
        total,
    })
}

/// `g ≺′ (d, a)`.
pub fn gen_majorizes(g: &[i64], d: &[i64], a: &[i64]) -> Result<bool> {
    Ok(gen_majorization(g, d, a)?.holds())
}

/// `u ∪ b`: the multiset union sorted nonincreasingly.
pub fn union(u: &[i64], b: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = u.iter().chain(b).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Outcome of the two clauses relating `c` and `d` through `h_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HxCheck {
    pub h: usize,
    /// `d_i = c_{i+x}` for `h_x − x + 1 ≤ i ≤ len d`.
    pub tail_equal: bool,
    /// `d_i ≥ c_{i+x}` for every `i`.
    pub dominates: bool,
}

/// For `len c = len d + x`: `h_x = min{ i : d_{i−x+1} < c_i }` (with `h_0 = 0`) and the
/// tail-equality and domination clauses.
pub fn check_lemma_hx(d: &[i64], c: &[i64], x: usize) -> Result<HxCheck> {
    if c.len() != d.len() + x {
        return domain(format!("len c = {} must equal len d + x = {}", c.len(), d.len() + x));
    }
    let h = if x == 0 { 0 } else { h_index(d, c, x)? };
    let lo = h as i64 - x as i64 + 1;
    let tail_equal = (lo.max(1)..=d.len() as i64).all(|i| d[i as usize - 1] == c[i as usize - 1 + x]);
    let dominates = (0..d.len()).all(|i| d[i] >= c[i + x]);
    Ok(HxCheck { h, tail_equal, dominates })
}

/// `Δ(η/φ, ε/ψ, p, q) = deg lcm(η, ε) − deg gcd(φ, ψ) + max{p, q}` given the degrees
/// `deg lcm(η, ε)` and `deg gcd(φ, ψ)`.
pub fn delta(lcm_deg: i64, gcd_deg: i64, p: i64, q: i64) -> i64 {
    lcm_deg - gcd_deg + p.max(q)
}

/// Sequence whose prefix sums are `partial[0], partial[1], …`.
pub fn from_prefix_sums(partial: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    partial
        .iter()
        .map(|&s| {
            let v = s - prev;
            prev = s;
            v
        })
        .collect()
}

/// `Δ(η/φ, ε/ψ, p, q)` on numerator/denominator pairs.
pub fn delta_ratio_orders<F: Field>(
    eta: (&Poly<F>, &Poly<F>),
    eps: (&Poly<F>, &Poly<F>),
    p: i64,
    q: i64,
) -> i64 {
    delta(eta.0.lcm(eps.0).deg(), eta.1.gcd(eps.1).deg(), p, q)
}

/// `Δ(η/φ, ε/ψ) = deg lcm(η, ε) − deg gcd(φ, ψ)`.
pub fn delta_ratio<F: Field>(eta: (&Poly<F>, &Poly<F>), eps: (&Poly<F>, &Poly<F>)) -> i64 {
    eta.0.lcm(eps.0).deg() - eta.1.gcd(eps.1).deg()
}

/// `Δ(η/φ, p) = deg η − deg φ + p`.
pub fn delta_order<F: Field>(eta: (&Poly<F>, &Poly<F>), p: i64) -> i64 {
    eta.0.deg() - eta.1.deg() + p
}

/// `Δ(η/φ) = deg η − deg φ`.
pub fn delta_single<F: Field>(eta: (&Poly<F>, &Poly<F>)) -> i64 {
    eta.0.deg() - eta.1.deg()
}
