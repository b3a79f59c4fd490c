//! Explicit row completions.
//!
//! [`complete_rows`] decides a prescription, carries it through the reductions in
//! [`reduce`] until it is a complete prescription for a polynomial matrix, and then
//! searches for the appended rows. Every completion it returns has been re-extracted
//! and compared with the original prescription.

mod reduce;
mod search;

use serde_json::{json, Value};

pub use reduce::{build_beta_chain, reduce_rat_to_poly, BetaChain, RatReduction};

use crate::decisions::{decide, Case, DecisionReport, MatrixKind, Prescription, Verdict};
use crate::error::{domain, parse_err, Result};
use crate::field::Field;
use crate::json::{matrix_to_json, poly_to_json, structural_data_to_json};
use crate::matrix::{PolyMatrix, RationalMatrix};
use crate::matstruct::{rational_rank, structural_data, StructuralData};
use crate::poly::Poly;
use reduce::{Planner, Step};
use search::{search, Search, Target};

/// Limits of the completion search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Entry-degree bound for `W`; the default is derived from the prescription.
    pub max_entry_degree: Option<usize>,
    pub max_candidates: u64,
    /// Accepted for interface compatibility. The search is sequential and its result
    /// does not depend on this flag.
    pub parallel: bool,
    /// Height of the coefficients tried over infinite fields.
    pub coefficient_height: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_entry_degree: None,
            max_candidates: 200_000,
            parallel: false,
            coefficient_height: 1,
        }
    }
}

impl SearchConfig {
    pub fn from_json(v: &Value) -> Result<Self> {
        let mut cfg = SearchConfig::default();
        let Some(obj) = v.as_object() else {
            return parse_err("config", "expected an object");
        };
        for (k, val) in obj {
            let path = format!("config.{k}");
            match k.as_str() {
                "max_entry_degree" => {
                    cfg.max_entry_degree = match val {
                        Value::Null => None,
                        _ => Some(val.as_u64().ok_or_else(|| bad(&path, "a nonnegative integer"))? as usize),
                    }
                }
                "max_candidates" => cfg.max_candidates = val.as_u64().ok_or_else(|| bad(&path, "a nonnegative integer"))?,
                "parallel" => cfg.parallel = val.as_bool().ok_or_else(|| bad(&path, "a boolean"))?,
                "coefficient_height" => {
                    cfg.coefficient_height = val
                        .as_u64()
                        .and_then(|h| u32::try_from(h).ok())
                        .ok_or_else(|| bad(&path, "a small nonnegative integer"))?
                }
                _ => return parse_err(&path, "unknown key"),
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_entry_degree": self.max_entry_degree,
            "max_candidates": self.max_candidates,
            "parallel": self.parallel,
            "coefficient_height": self.coefficient_height,
        })
    }
}

fn bad(path: &str, what: &str) -> crate::error::Error {
    crate::error::Error::Parse {
        path: path.into(),
        msg: format!("expected {what}"),
    }
}

/// What the reductions did on the way to a polynomial complete prescription.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<F: Field> {
    /// The case the prescription belonged to.
    pub case: Case,
    /// Every case visited, starting with `case`.
    pub steps: Vec<Case>,
    /// Scaling polynomial: the search runs on `ψ₁·R`.
    pub psi1: Poly<F>,
    /// `deg ψ₁`.
    pub z: i64,
    /// Orders after the shift by `−Z`.
    pub shifted_orders: Option<Vec<i64>>,
    pub beta: Option<Vec<Poly<F>>>,
    pub tau: Option<Poly<F>>,
    pub g: Option<usize>,
    pub h: Option<usize>,
    pub w: Option<usize>,
    pub a: Option<i64>,
    pub t: Vec<i64>,
    pub z1: Option<i64>,
    pub z2: Option<i64>,
    pub a_tilde: Option<i64>,
    pub b_tilde: Option<i64>,
    pub notes: Vec<String>,
    /// Search candidates examined.
    pub candidates: u64,
}

impl<F: Field> ReductionTrace<F> {
    pub(crate) fn new(case: Case) -> Self {
        ReductionTrace {
            case,
            steps: vec![case],
            psi1: Poly::one(),
            z: 0,
            shifted_orders: None,
            beta: None,
            tau: None,
            g: None,
            h: None,
            w: None,
            a: None,
            t: Vec::new(),
            z1: None,
            z2: None,
            a_tilde: None,
            b_tilde: None,
            notes: Vec::new(),
            candidates: 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let polys = |v: &Option<Vec<Poly<F>>>| v.as_ref().map(|ps| ps.iter().map(poly_to_json).collect::<Vec<_>>());
        json!({
            "case": self.case.id(),
            "steps": self.steps.iter().map(|c| c.id()).collect::<Vec<_>>(),
            "psi1": poly_to_json(&self.psi1),
            "Z": self.z,
            "shifted_orders": self.shifted_orders,
            "beta": polys(&self.beta),
            "tau": self.tau.as_ref().map(poly_to_json),
            "g": self.g,
            "h": self.h,
            "w": self.w,
            "A": self.a,
            "T": self.t,
            "Z1": self.z1,
            "Z2": self.z2,
            "Atilde": self.a_tilde,
            "Btilde": self.b_tilde,
            "notes": self.notes,
            "candidates": self.candidates,
        })
    }
}

/// A verified completion `[R; W]`.
#[derive(Clone, Debug)]
pub struct Completion<F: Field> {
    pub w: RationalMatrix<F>,
    /// Structural data of the stacked matrix.
    pub stacked: StructuralData<F>,
    pub trace: ReductionTrace<F>,
}

#[derive(Clone, Debug)]
pub enum Outcome<F: Field> {
    Found(Completion<F>),
    /// The decision rejects the prescription.
    Infeasible(DecisionReport),
    /// The conditions hold but the construction cannot be carried out over this field.
    Obstructed { reason: String, trace: ReductionTrace<F> },
    /// The search ran out of bound or budget. Nothing is claimed either way.
    Unknown { reason: String, trace: ReductionTrace<F> },
}

impl<F: Field> Outcome<F> {
    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::Infeasible(_) => "infeasible",
            Outcome::Obstructed { .. } => "obstructed",
            Outcome::Unknown { .. } => "unknown",
        }
    }

    pub fn completion(&self) -> Option<&Completion<F>> {
        match self {
            Outcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&ReductionTrace<F>> {
        match self {
            Outcome::Found(c) => Some(&c.trace),
            Outcome::Infeasible(_) => None,
            Outcome::Obstructed { trace, .. } | Outcome::Unknown { trace, .. } => Some(trace),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Found(c) => json!({
                "status": "found",
                "W": matrix_to_json(&c.w),
                "stacked": structural_data_to_json(&c.stacked),
                "trace": c.trace.to_json(),
            }),
            Outcome::Infeasible(rep) => json!({"status": "infeasible", "report": rep.to_json()}),
            Outcome::Obstructed { reason, trace } | Outcome::Unknown { reason, trace } => json!({
                "status": self.status(),
                "reason": reason,
                "trace": trace.to_json(),
            }),
        }
    }
}

/// Re-extracted structure of `[R; W]` and the targets it misses.
#[derive(Clone, Debug)]
pub struct Verification<F: Field> {
    pub data: StructuralData<F>,
    /// Among `"shape"`, `"rank"`, `"finite"`, `"infinite"`, `"cmi"`, `"rmi"`, `"kind"`.
    pub mismatches: Vec<&'static str>,
}

impl<F: Field> Verification<F> {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Stacks `W` under `R`, extracts the structural data from scratch and compares it with
/// every target `pre` prescribes.
pub fn verify_completion<F: Field>(
    r: &RationalMatrix<F>,
    w: &RationalMatrix<F>,
    pre: &Prescription<F>,
) -> Result<Verification<F>> {
    if w.cols() != r.cols() {
        return domain(format!("W has {} columns, R has {}", w.cols(), r.cols()));
    }
    let data = structural_data(&r.vstack(w));
    let mut mismatches = Vec::new();
    if w.rows() != pre.z {
        mismatches.push("shape");
    }
    if data.rank != rational_rank(r) + pre.x {
        mismatches.push("rank");
    }
    if pre.finite.as_ref().is_some_and(|f| *f != data.irf) {
        mismatches.push("finite");
    }
    if pre.infinite.as_ref().is_some_and(|q| *q != data.inf_orders) {
        mismatches.push("infinite");
    }
    if pre.cmi.as_ref().is_some_and(|d| *d != data.cmi) {
        mismatches.push("cmi");
    }
    if pre.rmi.as_ref().is_some_and(|v| *v != data.rmi) {
        mismatches.push("rmi");
    }
    if pre.kind == MatrixKind::Polynomial && !(w.is_polynomial() && r.is_polynomial()) {
        mismatches.push("kind");
    }
    Ok(Verification { data, mismatches })
}

/// `W̃ = W/ψ₁`.
pub fn lift_completion<F: Field>(w: &PolyMatrix<F>, psi1: &Poly<F>) -> RationalMatrix<F> {
    w.to_rational().divide(psi1)
}

/// Looks for `W` such that `[R; W]` attains `pre`.
///
/// Infeasible prescriptions are rejected by the decision without any search. Otherwise
/// the prescription is reduced to complete data of `ψ₁·R` and a polynomial `W` is
/// searched for under `cfg`; the returned completion is `W/ψ₁`. Search is deterministic.
pub fn complete_rows<F: Field>(r: &RationalMatrix<F>, pre: &Prescription<F>, cfg: &SearchConfig) -> Result<Outcome<F>> {
    let case = Case::of_prescription(pre)?;
    let data = structural_data(r);
    let rep = decide(case, &data, pre)?;
    if rep.verdict == Verdict::No {
        return Ok(Outcome::Infeasible(rep));
    }
    if pre.kind == MatrixKind::Polynomial && !r.is_polynomial() {
        return domain("a polynomial completion needs a polynomial R");
    }
    let rank_r = data.rank;
    let mut pl = Planner::new(case, pre.clone(), data);
    loop {
        match pl.step()? {
            Step::Continue => {}
            Step::Done => break,
            Step::Obstructed(reason) => return Ok(Outcome::Obstructed { reason, trace: pl.trace }),
        }
    }
    let psi1 = pl.trace.psi1.clone();
    if !r.scale(&psi1).is_polynomial() {
        let reason = format!("ψ₁ = {psi1} does not clear the denominators of R");
        return Ok(Outcome::Obstructed { reason, trace: pl.trace });
    }
    let p = r.scale_to_poly(&psi1);
    let target = Target::of(&pl.pre, rank_r);
    let heuristic = default_bound(&pl.pre, &psi1);
    let mut checked = None;
    let mut accept = |w: &PolyMatrix<F>| {
        let lifted = lift_completion(w, &psi1);
        match verify_completion(r, &lifted, pre) {
            Ok(v) if v.ok() => {
                checked = Some((lifted, v.data));
                true
            }
            _ => false,
        }
    };
    let (res, n) = search(&p, pre.z, &target, cfg, heuristic, &mut accept);
    pl.trace.candidates = n;
    Ok(match res {
        Search::Found => {
            let (w, stacked) = checked.expect("accepted candidates are verified");
            Outcome::Found(Completion {
                w,
                stacked,
                trace: pl.trace,
            })
        }
        Search::Exhausted(reason) => Outcome::Unknown { reason, trace: pl.trace },
    })
}

/// Degree content of the complete polynomial targets plus `|q₁|` and `deg ψ₁`.
fn default_bound<F: Field>(pre: &Prescription<F>, psi1: &Poly<F>) -> usize {
    let content: i64 = pre.finite.iter().flatten().map(|f| f.num().deg()).sum::<i64>()
        + pre.cmi.iter().flatten().sum::<i64>()
        + pre.rmi.iter().flatten().sum::<i64>();
    let q1 = pre.infinite.as_ref().and_then(|q| q.first()).map_or(0, |q| q.abs());
    (content + q1 + psi1.deg().max(0)) as usize
}
