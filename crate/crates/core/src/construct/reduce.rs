//! Reductions from a feasible partial prescription to complete data of a polynomial
//! matrix. Each step fills in the targets a case leaves free, or rescales a rational
//! matrix to a polynomial one, exactly as the sufficiency arguments do. The planner
//! re-decides after every step so a broken step surfaces as an obstruction instead of
//! a wrong completion.

use std::fmt::Display;

use super::ReductionTrace;
use crate::decisions::conditions::Instance;
use crate::decisions::{decide, Case, MatrixKind, Prescription, Verdict};
use crate::error::{domain, Result};
use crate::field::Field;
use crate::matrix::{PolyMatrix, RationalMatrix};
use crate::matstruct::{scale_by_poly, StructuralData};
use crate::poly::{divisor_of_degree, Poly, RationalFunction};
use crate::seqmaj::{from_prefix_sums, h_index, prefix_sum, sum_range, union};

/// Invariant factors `β` for an infinite-and-singular polynomial prescription.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaChain<F: Field> {
    /// `None` when no admissible `τ` exists over the working field.
    pub beta: Option<Vec<Poly<F>>>,
    pub a: i64,
    /// `τ`, of degree `−A` when `A ≤ 0` and `w` otherwise.
    pub tau: Option<Poly<F>>,
    /// `(g, h, w)`, only when `A > 0`.
    pub ghw: Option<(usize, usize, usize)>,
}

fn seq<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|t| t.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Builds `β₁ | … | β_{r+x}` for `[P; W]` from the structural data of `P` and a
/// prescription of orders and minimal indices whose inf-sing-poly conditions hold.
pub fn build_beta_chain<F: Field>(data: &StructuralData<F>, pre: &Prescription<F>) -> Result<BetaChain<F>> {
    let rep = decide(Case::InfSingPoly, data, pre)?;
    if !rep.verdict.conditions_hold() {
        return domain(format!("inf-sing-poly conditions fail: {}", rep.failures().join(", ")));
    }
    let a = rep.int("A").expect("inf-sing-poly reports A");
    let (r, x) = (data.rank as i64, pre.x as i64);
    let alpha = data.numerators();
    let al = |i: i64| if i < 1 { Poly::one() } else { alpha[i as usize - 1].clone() };
    let deg = |i: i64| al(i).deg();
    if a <= 0 {
        let tau = Poly::monomial(F::one(), (-a) as usize);
        if r + x == 0 {
            return Ok(BetaChain {
                beta: (a == 0).then(Vec::new),
                a,
                tau: Some(tau),
                ghw: None,
            });
        }
        let mut beta: Vec<Poly<F>> = (1..r + x).map(|i| al(i - x)).collect();
        beta.push(&al(r) * &tau);
        return Ok(BetaChain {
            beta: Some(beta),
            a,
            tau: Some(tau),
            ghw: None,
        });
    }
    let tail = |k: i64| sum_range(r - k + 1, r, deg);
    let g = (0..=r).find(|&k| a <= tail(k)).expect("A ≤ Σ deg α follows from eqAleq");
    let top = sum_range(r - g + 2, r, deg);
    let h = (1..=r).find(|&k| a - top <= deg(k - g + 1)).expect("k = r qualifies");
    let w = deg(h - g) + deg(h - g + 1) + top - a;
    let tau = divisor_of_degree(&al(h - g + 1), &al(h - g), w as usize)?;
    let beta = tau.as_ref().map(|tau| {
        (1..=r + x)
            .map(|i| match i.cmp(&(h + x)) {
                std::cmp::Ordering::Less => al(i - x - g),
                std::cmp::Ordering::Equal => tau.clone(),
                std::cmp::Ordering::Greater => al(i - x - g + 1),
            })
            .collect()
    });
    Ok(BetaChain {
        beta,
        a,
        tau,
        ghw: Some((g as usize, h as usize, w as usize)),
    })
}

/// State of a reduction: the current case and prescription against the structural data
/// of `ψ₁·R`.
pub(super) struct Planner<F: Field> {
    pub case: Case,
    pub pre: Prescription<F>,
    pub data: StructuralData<F>,
    pub trace: ReductionTrace<F>,
}

pub(super) enum Step {
    Continue,
    /// Complete polynomial data reached.
    Done,
    Obstructed(String),
}

impl<F: Field> Planner<F> {
    pub fn new(case: Case, pre: Prescription<F>, data: StructuralData<F>) -> Self {
        let trace = ReductionTrace::new(case);
        Planner { case, pre, data, trace }
    }

    /// Moves to `case` after a step and re-decides.
    fn enter(&mut self, case: Case, note: String) -> Result<Step> {
        self.trace.notes.push(note);
        self.case = case;
        self.trace.steps.push(case);
        let rep = decide(case, &self.data, &self.pre)?;
        if rep.verdict == Verdict::No {
            return Ok(Step::Obstructed(format!(
                "the {case} prescription reached by the reduction fails {}",
                rep.failures().join(", ")
            )));
        }
        Ok(Step::Continue)
    }

    /// Scales by `ψ₁`, shifting orders by `−deg ψ₁`.
    fn scale(&mut self, psi1: Poly<F>) -> Result<()> {
        self.data = scale_by_poly(&self.data, &psi1)?;
        if let Some(q) = &mut self.pre.infinite {
            q.iter_mut().for_each(|qi| *qi -= psi1.deg());
        }
        self.trace.z = psi1.deg();
        self.trace.psi1 = psi1;
        self.trace.shifted_orders = self.pre.infinite.clone();
        Ok(())
    }

    pub fn step(&mut self) -> Result<Step> {
        match self.case {
            Case::CompletePoly => Ok(Step::Done),
            Case::CompleteRat => self.complete_rat(),
            Case::InfSingPoly => self.inf_sing_poly(),
            Case::InfSingRat => self.inf_sing_rat(),
            Case::FinSing => self.fin_sing(),
            Case::InfCmiPoly => {
                let b = {
                    let inst = Instance::new(&self.data, &self.pre)?;
                    let (r, x) = (inst.r as i64, inst.x as i64);
                    let cd = inst.c().iter().sum::<i64>() - inst.d().iter().sum::<i64>();
                    let p_total = sum_range(1, r, |i| inst.p(i));
                    let prefix: Vec<i64> = (1..=(inst.z - inst.x) as i64)
                        .map(|j| {
                            cd + p_total
                                - sum_range(1, x + j.min(r), |i| inst.q(i))
                                - sum_range(1, r - j, |i| inst.p(i).max(inst.q(i + x + j)))
                        })
                        .collect();
                    from_prefix_sums(&prefix)
                };
                self.fill_rmi(Case::InfSingPoly, b, "b̂′")
            }
            Case::InfCmiRat => {
                let b = {
                    let inst = Instance::new(&self.data, &self.pre)?;
                    let (r, x) = (inst.r as i64, inst.x as i64);
                    let excess = sum_range(1, r, |i| inst.p(i).max(inst.q(i + x)) - inst.q(i + x));
                    let prefix: Vec<i64> = (1..=(inst.z - inst.x) as i64)
                        .map(|j| excess + sum_range(1, r - j, |i| inst.q(i + x + j) - inst.p(i).max(inst.q(i + x + j))))
                        .collect();
                    from_prefix_sums(&prefix)
                };
                self.fill_rmi(Case::InfSingRat, b, "b̂̃′")
            }
            Case::FinCmi => {
                let b = {
                    let inst = Instance::new(&self.data, &self.pre)?;
                    let (r, x) = (inst.r as i64, inst.x as i64);
                    let excess = sum_range(1, r, |i| inst.delta2(i, i + x) - inst.delta_eps_deg(i + x));
                    let prefix: Vec<i64> = (1..=(inst.z - inst.x) as i64)
                        .map(|j| {
                            excess + sum_range(1, r - j, |i| inst.delta_eps_deg(i + x + j) - inst.delta2(i, i + x + j))
                        })
                        .collect();
                    from_prefix_sums(&prefix)
                };
                self.fill_rmi(Case::FinSing, b, "b̂̃′")
            }
            Case::Cmi => {
                let b = vec![0; self.pre.z - self.pre.x];
                self.fill_rmi(Case::Sing, b, "zeros")
            }
            Case::InfRmiPoly => self.fill_cmi(Case::InfSingPoly),
            Case::InfRmiRat => self.fill_cmi(Case::InfSingRat),
            Case::FinRmi => self.fill_cmi(Case::FinSing),
            Case::Rmi => self.fill_cmi(Case::Sing),
            Case::Sing => self.sing(),
        }
    }

    /// `v = u ∪ b`.
    fn fill_rmi(&mut self, next: Case, b: Vec<i64>, name: &str) -> Result<Step> {
        if b.iter().any(|&k| k < 0) {
            return Ok(Step::Obstructed(format!("{name} = {} has a negative entry", seq(&b))));
        }
        let v = union(&self.data.rmi, &b);
        let note = format!("{}: v = u ∪ {name} = {}", self.case, seq(&v));
        self.pre.rmi = Some(v);
        self.enter(next, note)
    }

    /// `d_i = c_{i+x}`.
    fn fill_cmi(&mut self, next: Case) -> Result<Step> {
        let d = self.data.cmi[self.pre.x..].to_vec();
        let note = format!("{}: d_i = c_(i+x) = {}", self.case, seq(&d));
        self.pre.cmi = Some(d);
        self.enter(next, note)
    }

    /// `ε_i = 1, ψ_i = φ₁` for `i ≤ x`, then `ε_{i+x}/ψ_{i+x} = η_i/φ_i`.
    fn sing(&mut self) -> Result<Step> {
        let phi1 = self.data.irf.first().map(|f| f.den().clone()).unwrap_or_else(Poly::one);
        let head = RationalFunction::new(Poly::one(), phi1)?;
        let mut finite = vec![head; self.pre.x];
        finite.extend(self.data.irf.iter().cloned());
        let note = format!("sing: ε/ψ = {}", seq(&finite));
        self.pre.finite = Some(finite);
        self.enter(Case::FinSing, note)
    }

    /// Orders `q̃` making the complete rational conditions hold.
    fn fin_sing(&mut self) -> Result<Step> {
        let (q, note) = {
            let inst = Instance::new(&self.data, &self.pre)?;
            let (r, x) = (inst.r as i64, inst.x as i64);
            let big_v = inst.big_v();
            let c = inst.c();
            let d = inst.d();
            let btilde = sum_range(1, r + x, |i| inst.delta_eps_deg(i)) - sum_range(1, r, |i| inst.delta_eta_deg(i))
                + d.iter().sum::<i64>()
                - c.iter().sum::<i64>()
                + big_v;
            self.trace.b_tilde = Some(btilde);
            // With r = 0 there is no p̃₁; zero keeps every identity of the construction.
            let p1 = if r > 0 { inst.p(1) } else { 0 };
            if x == 0 {
                let mut q = inst.data.inf_orders.clone();
                if let Some(first) = q.first_mut() {
                    *first -= btilde;
                }
                let note = format!("fin-sing: B̃ = {btilde}, q̃ = {}", seq(&q));
                (q, note)
            } else {
                let ahat: Vec<i64> = (1..=x)
                    .map(|j| {
                        big_v + sum_range(1, r + j, |i| inst.delta_eps_deg(i + x - j))
                            - sum_range(1, r, |i| inst.delta2(i, i + x - j))
                    })
                    .collect();
                let mut t = vec![0];
                for j in 1..=x {
                    let h = h_index(d, c, j as usize)? as i64;
                    t.push(prefix_sum(c, h) - prefix_sum(d, h - j) - ahat[j as usize - 1] - j * p1);
                }
                let z2 = *t.iter().max().expect("T₀ exists");
                let z1 = z2 + btilde + x * p1;
                let mut q = vec![p1 - z1];
                q.extend(std::iter::repeat_n(p1, x as usize - 1));
                q.extend_from_slice(&inst.data.inf_orders);
                *q.last_mut().expect("x > 0") += z2;
                let note = format!("fin-sing: B̃ = {btilde}, T = {}, Z₁ = {z1}, Z₂ = {z2}, q̃ = {}", seq(&t), seq(&q));
                self.trace.t = t;
                self.trace.z1 = Some(z1);
                self.trace.z2 = Some(z2);
                (q, note)
            }
        };
        if q.windows(2).any(|w| w[0] > w[1]) {
            return Ok(Step::Obstructed(format!("the constructed orders {} are not sorted", seq(&q))));
        }
        self.pre.infinite = Some(q);
        self.pre.kind = MatrixKind::Rational;
        self.enter(Case::CompleteRat, note)
    }

    /// `P = ψ₁·R` with `ψ₁` the first prescribed denominator; `β_i = ψ₁ε_i/ψ_i`.
    fn complete_rat(&mut self) -> Result<Step> {
        let finite = self.pre.finite.clone().expect("complete data");
        let psi1 = finite.first().map(|f| f.den().clone()).unwrap_or_else(Poly::one);
        self.scale(psi1.clone())?;
        let beta: Vec<Poly<F>> = finite
            .iter()
            .map(|f| {
                let b = f.scale_poly(&psi1);
                debug_assert!(b.is_poly());
                b.num().clone()
            })
            .collect();
        let note = format!("complete-rat: ψ₁ = {psi1}, β = {}", seq(&beta));
        self.trace.beta = Some(beta.clone());
        self.pre = Prescription {
            kind: MatrixKind::Polynomial,
            ..self.pre.clone()
        }
        .with_invariant_factors(beta);
        self.enter(Case::CompletePoly, note)
    }

    fn inf_sing_poly(&mut self) -> Result<Step> {
        let chain = build_beta_chain(&self.data, &self.pre)?;
        self.trace.a = Some(chain.a);
        self.trace.tau = chain.tau.clone();
        if let Some((g, h, w)) = chain.ghw {
            self.trace.g = Some(g);
            self.trace.h = Some(h);
            self.trace.w = Some(w);
        }
        let Some(beta) = chain.beta else {
            return Ok(Step::Obstructed(match chain.ghw {
                Some((g, h, w)) => {
                    let al = |i: usize| {
                        if i < 1 { Poly::one() } else { self.data.irf[i - 1].num().clone() }
                    };
                    format!(
                        "A = {} > 0 and no monic τ of degree w = {w} with {} | τ | {} exists over {} (g = {g}, h = {h})",
                        chain.a,
                        al(h - g),
                        al(h - g + 1),
                        F::descriptor()
                    )
                }
                None => format!("A = {} but there are no invariant factors to absorb it", chain.a),
            }));
        };
        let note = format!("inf-sing-poly: A = {}, β = {}", chain.a, seq(&beta));
        self.trace.beta = Some(beta.clone());
        self.pre = self.pre.clone().with_invariant_factors(beta);
        self.enter(Case::CompletePoly, note)
    }

    fn inf_sing_rat(&mut self) -> Result<Step> {
        let (r, x) = (self.data.rank as i64, self.pre.x as i64);
        let phi1 = self.data.irf.first().map(|f| f.den().clone()).unwrap_or_else(Poly::one);
        let (atilde, bound) = {
            let inst = Instance::new(&self.data, &self.pre)?;
            let big_v = inst.big_v();
            let (c, d) = (inst.c(), inst.d());
            let atilde = sum_range(1, r + x, |i| inst.q(i)) - sum_range(1, r, |i| inst.p(i)) + d.iter().sum::<i64>()
                - c.iter().sum::<i64>()
                + big_v;
            let mut bound = phi1.deg();
            if x > 0 {
                let ahat: Vec<i64> = (1..=x)
                    .map(|j| {
                        big_v + sum_range(1, r + j, |i| inst.q(i + x - j))
                            - sum_range(1, r, |i| inst.p(i).max(inst.q(i + x - j)))
                            - atilde
                    })
                    .collect();
                bound = bound.max(div_ceil(atilde, x));
                for j in 1..x {
                    let h = h_index(d, c, j as usize)? as i64;
                    let k = prefix_sum(c, h) - prefix_sum(d, h - j) - ahat[j as usize - 1];
                    bound = bound.max(div_ceil(k, x - j));
                }
            }
            (atilde, bound)
        };
        self.trace.a_tilde = Some(atilde);
        if x > 0 {
            let z = bound;
            let psi1 = &phi1 * &Poly::monomial(F::one(), (z - phi1.deg()) as usize);
            self.scale(psi1.clone())?;
            self.pre.kind = MatrixKind::Polynomial;
            let note = format!("inf-sing-rat: Ã = {atilde}, Z = {z}, ψ₁ = {psi1}");
            return self.enter(Case::InfSingPoly, note);
        }
        if atilde < 0 {
            return Ok(Step::Obstructed(format!("x = 0 needs Ã ≥ 0, found {atilde}")));
        }
        let tau = Poly::monomial(F::one(), atilde as usize);
        let psi1 = &phi1 * &tau;
        let eta1 = self.data.irf.first().map(|f| f.num().clone());
        self.scale(psi1.clone())?;
        let mut beta = self.data.numerators();
        if let (Some(b1), Some(e1)) = (beta.first_mut(), eta1) {
            *b1 = e1;
        }
        self.trace.tau = Some(tau);
        self.trace.beta = Some(beta.clone());
        let note = format!("inf-sing-rat: Ã = {atilde}, ψ₁ = {psi1}, β = {}", seq(&beta));
        self.pre = Prescription {
            kind: MatrixKind::Polynomial,
            ..self.pre.clone()
        }
        .with_invariant_factors(beta);
        self.enter(Case::CompletePoly, note)
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// A rational completion problem carried to the polynomial level.
#[derive(Clone, Debug)]
pub struct RatReduction<F: Field> {
    /// `P = ψ₁·R`.
    pub p: PolyMatrix<F>,
    pub data: StructuralData<F>,
    /// The polynomial-level case and prescription reached.
    pub case: Case,
    pub pre: Prescription<F>,
    pub trace: ReductionTrace<F>,
}

/// Runs the reductions of a prescription for `[R; W̃]` until the problem is posed for
/// the polynomial matrix `P = ψ₁·R` and a polynomial `W`, whose quotient `W/ψ₁`
/// then completes `R`.
pub fn reduce_rat_to_poly<F: Field>(r: &RationalMatrix<F>, pre: &Prescription<F>) -> Result<RatReduction<F>> {
    let case = Case::of_prescription(pre)?;
    let data = crate::matstruct::structural_data(r);
    let rep = decide(case, &data, pre)?;
    if rep.verdict == Verdict::No {
        return domain(format!("{case} conditions fail: {}", rep.failures().join(", ")));
    }
    let mut pl = Planner::new(case, pre.clone(), data);
    while pl.case.fixed_kind() != Some(MatrixKind::Polynomial) {
        if let Step::Obstructed(why) = pl.step()? {
            return domain(why);
        }
    }
    if !r.scale(&pl.trace.psi1).is_polynomial() {
        return domain("ψ₁·R is not polynomial; a polynomial prescription needs a polynomial matrix");
    }
    Ok(RatReduction {
        p: r.scale_to_poly(&pl.trace.psi1),
        data: pl.data,
        case: pl.case,
        pre: pl.pre,
        trace: pl.trace,
    })
}
