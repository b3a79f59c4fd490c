//! Individual condition evaluators.
//!
//! An [`Instance`] pairs the structural data of `R` with a validated prescription and
//! exposes the 1-indexed sequences with their sentinel extensions. The evaluators each
//! return one [`Condition`]; the theorem drivers compose them.

use serde_json::{json, Value};

use super::{Condition, MatrixKind, Prescription};
use crate::error::{domain, Result};
use crate::field::Field;
use crate::matstruct::StructuralData;
use crate::poly::Poly;
use crate::seqmaj::{self, at, delta_order, delta_ratio, delta_ratio_orders, ExtInt, Orientation};

/// Structural data of `R` (size `m × n`, rank `r`) together with a prescription for
/// `[R; W]`, with all shapes checked.
#[derive(Clone, Copy, Debug)]
pub struct Instance<'a, F: Field> {
    pub data: &'a StructuralData<F>,
    pub pre: &'a Prescription<F>,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub x: usize,
    pub z: usize,
}

fn is_partition(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&k| k >= 0)
}

impl<'a, F: Field> Instance<'a, F> {
    pub fn new(data: &'a StructuralData<F>, pre: &'a Prescription<F>) -> Result<Self> {
        let r = data.rank;
        if data.irf.len() != r || data.inf_orders.len() != r {
            return domain("structural data: irf and inf_orders must have length rank");
        }
        if !is_partition(&data.cmi) || !is_partition(&data.rmi) {
            return domain("structural data: minimal indices must be nonincreasing and nonnegative");
        }
        let (m, n) = (data.rows(), data.cols());
        let (z, x) = (pre.z, pre.x);
        if x > z || x > n - r {
            return domain(format!("rank increase x = {x} must satisfy x ≤ min(z, n − r) = {}", z.min(n - r)));
        }
        let len = r + x;
        if let Some(f) = &pre.finite {
            if f.len() != len {
                return domain(format!("finite targets need {len} terms, found {}", f.len()));
            }
            for (i, e) in f.iter().enumerate() {
                if e.is_zero() || !e.num().is_monic() {
                    return domain(format!("finite target {} must have a monic nonzero numerator", i + 1));
                }
            }
            for (i, w) in f.windows(2).enumerate() {
                if !w[0].num().divides(w[1].num()) || !w[1].den().divides(w[0].den()) {
                    return domain(format!("finite targets {} and {} do not form a divisibility chain", i + 1, i + 2));
                }
            }
            if pre.kind == MatrixKind::Polynomial && f.iter().any(|e| !e.is_poly()) {
                return domain("polynomial prescriptions need every ψ_i = 1");
            }
        }
        if let Some(q) = &pre.infinite {
            if q.len() != len {
                return domain(format!("infinite targets need {len} terms, found {}", q.len()));
            }
            if q.windows(2).any(|w| w[0] > w[1]) {
                return domain("infinite targets must be nondecreasing");
            }
        }
        if let Some(d) = &pre.cmi {
            if d.len() != n - r - x {
                return domain(format!("column minimal indices need {} terms, found {}", n - r - x, d.len()));
            }
            if !is_partition(d) {
                return domain("column minimal indices must be a partition");
            }
        }
        if let Some(v) = &pre.rmi {
            if v.len() != m + z - r - x {
                return domain(format!("row minimal indices need {} terms, found {}", m + z - r - x, v.len()));
            }
            if !is_partition(v) {
                return domain("row minimal indices must be a partition");
            }
        }
        Ok(Instance { data, pre, m, n, r, x, z })
    }

    /// `p̃_i`, `1 ≤ i ≤ r`.
    pub fn p(&self, i: i64) -> i64 {
        self.data.inf_orders[i as usize - 1]
    }

    /// `q̃_i`, `1 ≤ i ≤ r + x`.
    pub fn q(&self, i: i64) -> i64 {
        self.qs()[i as usize - 1]
    }

    pub fn q_ext(&self, i: i64) -> ExtInt {
        at(self.qs(), i, Orientation::Nondecreasing)
    }

    pub fn qs(&self) -> &'a [i64] {
        self.pre.infinite.as_deref().expect("infinite targets")
    }

    pub fn c(&self) -> &'a [i64] {
        &self.data.cmi
    }

    pub fn u(&self) -> &'a [i64] {
        &self.data.rmi
    }

    pub fn d(&self) -> &'a [i64] {
        self.pre.cmi.as_deref().expect("column minimal indices")
    }

    pub fn v(&self) -> &'a [i64] {
        self.pre.rmi.as_deref().expect("row minimal indices")
    }

    /// `Σv − Σu`.
    pub fn big_v(&self) -> i64 {
        self.v().iter().sum::<i64>() - self.u().iter().sum::<i64>()
    }

    /// `(η_i, φ_i)`, `1 ≤ i ≤ r`.
    pub fn eta(&self, i: i64) -> (&'a Poly<F>, &'a Poly<F>) {
        let f = &self.data.irf[i as usize - 1];
        (f.num(), f.den())
    }

    /// `(ε_i, ψ_i)`, `1 ≤ i ≤ r + x`.
    pub fn eps(&self, i: i64) -> (&'a Poly<F>, &'a Poly<F>) {
        let f = &self.pre.finite.as_ref().expect("finite targets")[i as usize - 1];
        (f.num(), f.den())
    }

    fn len(&self) -> i64 {
        (self.r + self.x) as i64
    }

    /// `ε_i` with the zero polynomial beyond the chain.
    fn eps_num_ext(&self, i: i64) -> Poly<F> {
        if i > self.len() { Poly::zero() } else { self.eps(i).0.clone() }
    }

    /// `ψ_i` with one beyond the chain.
    fn eps_den_ext(&self, i: i64) -> Poly<F> {
        if i > self.len() { Poly::one() } else { self.eps(i).1.clone() }
    }

    /// `deg α_i`, zero for `i < 1`.
    pub fn alpha_deg(&self, i: i64) -> i64 {
        if i < 1 { 0 } else { self.eta(i).0.deg() }
    }

    /// `Δ(η_i/φ_i, ε_j/ψ_j, p̃_i, q̃_j)`.
    pub fn delta4(&self, i: i64, j: i64) -> i64 {
        delta_ratio_orders(self.eta(i), self.eps(j), self.p(i), self.q(j))
    }

    /// `Δ(ε_j/ψ_j, q̃_j)`.
    pub fn delta_eps(&self, j: i64) -> i64 {
        delta_order(self.eps(j), self.q(j))
    }

    /// `Δ(η_i/φ_i, p̃_i)`.
    pub fn delta_eta(&self, i: i64) -> i64 {
        delta_order(self.eta(i), self.p(i))
    }

    /// `Δ(η_i/φ_i, ε_j/ψ_j)`.
    pub fn delta2(&self, i: i64, j: i64) -> i64 {
        delta_ratio(self.eta(i), self.eps(j))
    }

    /// `Δ(η_i/φ_i)`.
    pub fn delta_eta_deg(&self, i: i64) -> i64 {
        seqmaj::delta_single(self.eta(i))
    }

    /// `Δ(ε_j/ψ_j)`.
    pub fn delta_eps_deg(&self, j: i64) -> i64 {
        seqmaj::delta_single(self.eps(j))
    }
}

fn polys<F: Field>(ps: impl Iterator<Item = Poly<F>>) -> Value {
    Value::Array(ps.map(|p| Value::String(p.to_string())).collect())
}

/// `ε_i | η_i | ε_{i+z}` for `1 ≤ i ≤ r`.
pub fn chain_num<F: Field>(inst: &Instance<F>, id: &'static str) -> Condition {
    let z = inst.z as i64;
    let failing: Vec<i64> = (1..=inst.r as i64)
        .filter(|&i| {
            let eta = inst.eta(i).0;
            !(inst.eps(i).0.divides(eta) && eta.divides(&inst.eps_num_ext(i + z)))
        })
        .collect();
    Condition {
        id,
        pass: failing.is_empty(),
        lhs: json!({"target": polys((1..=inst.len()).map(|i| inst.eps(i).0.clone())), "failing": failing}),
        rhs: polys((1..=inst.r as i64).map(|i| inst.eta(i).0.clone())),
        informational: false,
    }
}

/// `ψ_{i+z} | φ_i | ψ_i` for `1 ≤ i ≤ r`.
pub fn chain_den<F: Field>(inst: &Instance<F>, id: &'static str) -> Condition {
    let z = inst.z as i64;
    let failing: Vec<i64> = (1..=inst.r as i64)
        .filter(|&i| {
            let phi = inst.eta(i).1;
            !(inst.eps_den_ext(i + z).divides(phi) && phi.divides(inst.eps(i).1))
        })
        .collect();
    Condition {
        id,
        pass: failing.is_empty(),
        lhs: json!({"target": polys((1..=inst.len()).map(|i| inst.eps(i).1.clone())), "failing": failing}),
        rhs: polys((1..=inst.r as i64).map(|i| inst.eta(i).1.clone())),
        informational: false,
    }
}

/// `q̃_i ≤ p̃_i ≤ q̃_{i+z}` for `1 ≤ i ≤ r`.
pub fn interlace_orders<F: Field>(inst: &Instance<F>, id: &'static str) -> Condition {
    let z = inst.z as i64;
    let failing: Vec<i64> = (1..=inst.r as i64)
        .filter(|&i| {
            let p = ExtInt::Fin(inst.p(i));
            !(inst.q_ext(i) <= p && p <= inst.q_ext(i + z))
        })
        .collect();
    Condition {
        id,
        pass: failing.is_empty(),
        lhs: json!({"target": inst.qs(), "failing": failing}),
        rhs: json!(inst.data.inf_orders),
        informational: false,
    }
}

/// `d_i = c_{i+x}` for `h_x − x + 1 ≤ i ≤ n − r − x`. Also returns `h_x`.
pub fn tail_equal<F: Field>(inst: &Instance<F>) -> Result<(Condition, usize)> {
    let hx = seqmaj::check_lemma_hx(inst.d(), inst.c(), inst.x)?;
    Ok((
        Condition {
            id: "eqdc",
            pass: hx.tail_equal,
            lhs: json!(inst.d()),
            rhs: json!(inst.c()),
            informational: false,
        },
        hx.h,
    ))
}

/// `lhs ≤ rhs`, or `lhs = rhs` when `equality` is set.
pub fn compare(id: &'static str, lhs: i64, rhs: i64, equality: bool) -> Condition {
    Condition {
        id,
        pass: if equality { lhs == rhs } else { lhs <= rhs },
        lhs: json!(lhs),
        rhs: json!(rhs),
        informational: false,
    }
}

/// `g ≺′ (d, a)`.
pub fn gen_majorization(id: &'static str, g: &[i64], d: &[i64], a: &[i64]) -> Result<Condition> {
    let gm = seqmaj::gen_majorization(g, d, a)?;
    let pass = gm.holds();
    let (h, (lp, rp)): (Vec<usize>, (Vec<i64>, Vec<i64>)) = gm.partial.iter().map(|&(h, l, r)| (h, (l, r))).unzip();
    Ok(Condition {
        id,
        pass,
        lhs: json!({"g": g, "interlace": gm.interlace, "total": gm.total, "h": h, "partial": lp}),
        rhs: json!({"d": d, "a": a, "partial": rp}),
        informational: false,
    })
}

/// `g ≺ a`.
pub fn majorization(id: &'static str, g: &[i64], a: &[i64]) -> Result<Condition> {
    Ok(Condition {
        id,
        pass: seqmaj::majorizes(g, a)?,
        lhs: json!(g),
        rhs: json!(a),
        informational: false,
    })
}
