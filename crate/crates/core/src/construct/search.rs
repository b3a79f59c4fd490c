//! Bounded, deterministic search for a polynomial `W` such that `[P; W]` has prescribed
//! complete structural data.
//!
//! Candidates are sparse matrices. Their support is a set of `(row, col, exp)` positions
//! and their coefficients come from [`Field::search_coefficients`]. The enumeration runs
//! by number of terms, then by total exponent, then lexicographically over supports.
//! Two symmetries of the problem are factored out. Rows may be rescaled, so the first
//! term of every row has coefficient one. Rows may be permuted, so row supports must
//! appear in nondecreasing order.

use std::ops::ControlFlow;

use super::SearchConfig;
use crate::decisions::Prescription;
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::matstruct::{infinite_orders, minimal_indices, poly_rank, smith_form};
use crate::poly::Poly;

/// Complete polynomial-level targets for `[P; W]`.
pub(super) struct Target<F: Field> {
    pub rank: usize,
    pub beta: Vec<Poly<F>>,
    pub q: Vec<i64>,
    pub d: Vec<i64>,
    pub v: Vec<i64>,
}

impl<F: Field> Target<F> {
    pub fn of(pre: &Prescription<F>, r: usize) -> Self {
        Target {
            rank: r + pre.x,
            beta: pre.finite.as_ref().expect("complete data").iter().map(|f| f.num().monic()).collect(),
            q: pre.infinite.clone().expect("complete data"),
            d: pre.cmi.clone().expect("complete data"),
            v: pre.rmi.clone().expect("complete data"),
        }
    }

    /// `−q₁`, the degree every completed matrix has.
    pub fn degree(&self) -> Option<usize> {
        self.q.first().map(|q| (-q).max(0) as usize)
    }

    /// Cheapest invariants first; minimal indices last.
    fn matches(&self, m: &PolyMatrix<F>) -> bool {
        if m.degree() != self.degree() {
            return false;
        }
        if poly_rank(m) != self.rank {
            return false;
        }
        let mr = m.to_rational();
        if infinite_orders(&mr) != self.q {
            return false;
        }
        if smith_form(m, false).invariant_factors != self.beta {
            return false;
        }
        let (right, left) = minimal_indices(&mr);
        right.indices == self.d && left.indices == self.v
    }
}

pub(super) enum Search {
    Found,
    Exhausted(String),
}

struct Space<'a, F: Field> {
    p: &'a PolyMatrix<F>,
    target: &'a Target<F>,
    z: usize,
    n: usize,
    bound: usize,
    /// Whether some entry of `W` must reach degree `bound` to lift the degree of `P`.
    need_top: bool,
    coeffs: Vec<F>,
    budget: u64,
    candidates: u64,
}

impl<F: Field> Space<'_, F> {
    fn pos(&self, idx: usize) -> (usize, usize, usize) {
        let per_row = self.n * (self.bound + 1);
        (idx / per_row, idx % per_row / (self.bound + 1), idx % (self.bound + 1))
    }

    fn positions(&self) -> usize {
        self.z * self.n * (self.bound + 1)
    }

    /// Supports of `k` positions with exponent sum `s`, in lexicographic order.
    fn supports(
        &mut self,
        k: usize,
        s: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&mut Self, &[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let need = k - chosen.len();
        if need == 0 {
            return if s == 0 { f(self, chosen) } else { ControlFlow::Continue(()) };
        }
        if s > need * self.bound {
            return ControlFlow::Continue(());
        }
        let total = self.positions();
        for idx in start..total {
            if total - idx < need {
                break;
            }
            let e = self.pos(idx).2;
            if e > s {
                continue;
            }
            chosen.push(idx);
            let flow = self.supports(k, s - e, idx + 1, chosen, f);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn canonical(&self, support: &[usize]) -> bool {
        if self.need_top && !support.iter().any(|&i| self.pos(i).2 == self.bound) {
            return false;
        }
        let mut rows: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.z];
        for &i in support {
            let (r, c, e) = self.pos(i);
            rows[r].push((c, e));
        }
        rows.windows(2).all(|w| w[0] <= w[1])
    }

    /// Tries every coefficient assignment on a support.
    fn try_support(
        &mut self,
        support: &[usize],
        accept: &mut dyn FnMut(&PolyMatrix<F>) -> bool,
    ) -> ControlFlow<Option<PolyMatrix<F>>> {
        if !self.canonical(support) {
            return ControlFlow::Continue(());
        }
        // Terms after the first of their row carry a free coefficient.
        let free: Vec<bool> = support
            .iter()
            .enumerate()
            .map(|(t, &i)| t > 0 && self.pos(support[t - 1]).0 == self.pos(i).0)
            .collect();
        let nfree = free.iter().filter(|&&b| b).count();
        let mut digits = vec![0usize; nfree];
        loop {
            if self.candidates >= self.budget {
                return ControlFlow::Break(None);
            }
            self.candidates += 1;
            let mut w = PolyMatrix::zeros(self.z, self.n);
            let mut next = digits.iter();
            for (t, &i) in support.iter().enumerate() {
                let (r, c, e) = self.pos(i);
                let coeff = if free[t] { self.coeffs[*next.next().expect("digit")].clone() } else { F::one() };
                w[(r, c)] = &w[(r, c)] + &Poly::monomial(coeff, e);
            }
            if self.target.matches(&self.p.vstack(&w)) && accept(&w) {
                return ControlFlow::Break(Some(w));
            }
            // Odometer over the free coefficients.
            let mut carry = true;
            for dgt in digits.iter_mut().rev() {
                *dgt += 1;
                if *dgt < self.coeffs.len() {
                    carry = false;
                    break;
                }
                *dgt = 0;
            }
            if carry {
                return ControlFlow::Continue(());
            }
        }
    }
}

/// Searches for `W` with `z` rows making `[P; W]` match `target`, for which `accept`
/// also holds. `heuristic` is the default entry-degree bound. Returns the number of
/// candidates examined alongside the result.
pub(super) fn search<F: Field>(
    p: &PolyMatrix<F>,
    z: usize,
    target: &Target<F>,
    cfg: &SearchConfig,
    heuristic: usize,
    accept: &mut dyn FnMut(&PolyMatrix<F>) -> bool,
) -> (Search, u64) {
    let n = p.cols();
    let Some(top) = target.degree() else {
        // Rank zero: the only candidate is W = 0.
        let w = PolyMatrix::zeros(z, n);
        if target.matches(&p.vstack(&w)) && accept(&w) {
            return (Search::Found, 1);
        }
        return (Search::Exhausted("rank zero forces W = 0, which does not match".into()), 1);
    };
    let deg_p = p.degree();
    let bound = cfg.max_entry_degree.unwrap_or(heuristic).min(top);
    let need_top = deg_p.is_none_or(|d| d < top);
    if need_top && bound < top {
        return (
            Search::Exhausted(format!(
                "entry-degree bound {bound} is below the degree {top} the completion must reach"
            )),
            0,
        );
    }
    let mut sp = Space {
        p,
        target,
        z,
        n,
        bound,
        need_top,
        coeffs: F::search_coefficients(cfg.coefficient_height),
        budget: cfg.max_candidates,
        candidates: 0,
    };
    let mut found = None;
    let mut out_of_budget = false;
    'k: for k in 0..=sp.positions() {
        for s in 0..=k * bound {
            let mut visit = |sp: &mut Space<'_, F>, support: &[usize]| match sp.try_support(support, accept) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(Some(w)) => {
                    found = Some(w);
                    ControlFlow::Break(())
                }
                ControlFlow::Break(None) => {
                    out_of_budget = true;
                    ControlFlow::Break(())
                }
            };
            if sp.supports(k, s, 0, &mut Vec::new(), &mut visit).is_break() {
                break 'k;
            }
        }
    }
    let n_cand = sp.candidates;
    match found {
        Some(_) => (Search::Found, n_cand),
        None if out_of_budget => (
            Search::Exhausted(format!("no completion among the first {n_cand} candidates (max_candidates)")),
            n_cand,
        ),
        None => (
            Search::Exhausted(format!(
                "no completion with entries of degree ≤ {bound} and coefficient height {}",
                cfg.coefficient_height
            )),
            n_cand,
        ),
    }
}
