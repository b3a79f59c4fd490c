//! Feasibility of row completions with partially prescribed structural data.
//!
//! Each [`Case`] names one family of prescribed invariants. [`decide`] evaluates the
//! necessary and sufficient conditions for that family condition by condition and
//! returns a [`DecisionReport`] recording every evaluated condition (tagged by the
//! equation label used in the literature, e.g. `"eqinterratioi"`) and the derived
//! sequences the conditions are built from.

pub mod conditions;
mod theorems;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::field::Field;
use crate::matstruct::StructuralData;
use crate::poly::{Poly, RationalFunction};

pub use theorems::existence_complete;

/// Whether the completed matrix must be polynomial or may be rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    Polynomial,
    Rational,
}

impl MatrixKind {
    pub fn id(self) -> &'static str {
        match self {
            MatrixKind::Polynomial => "poly",
            MatrixKind::Rational => "rat",
        }
    }
}

/// The fourteen prescription families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    CompleteRat,
    CompletePoly,
    InfSingPoly,
    InfSingRat,
    InfCmiPoly,
    InfCmiRat,
    InfRmiPoly,
    InfRmiRat,
    FinSing,
    FinCmi,
    FinRmi,
    Sing,
    Rmi,
    Cmi,
}

/// Which of the four invariant families a case prescribes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Targets {
    pub finite: bool,
    pub infinite: bool,
    pub cmi: bool,
    pub rmi: bool,
}

impl Case {
    pub const ALL: [Case; 14] = [
        Case::CompleteRat,
        Case::CompletePoly,
        Case::InfSingPoly,
        Case::InfSingRat,
        Case::InfCmiPoly,
        Case::InfCmiRat,
        Case::InfRmiPoly,
        Case::InfRmiRat,
        Case::FinSing,
        Case::FinCmi,
        Case::FinRmi,
        Case::Sing,
        Case::Rmi,
        Case::Cmi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Case::CompleteRat => "complete-rat",
            Case::CompletePoly => "complete-poly",
            Case::InfSingPoly => "inf-sing-poly",
            Case::InfSingRat => "inf-sing-rat",
            Case::InfCmiPoly => "inf-cmi-poly",
            Case::InfCmiRat => "inf-cmi-rat",
            Case::InfRmiPoly => "inf-rmi-poly",
            Case::InfRmiRat => "inf-rmi-rat",
            Case::FinSing => "fin-sing",
            Case::FinCmi => "fin-cmi",
            Case::FinRmi => "fin-rmi",
            Case::Sing => "sing",
            Case::Rmi => "rmi",
            Case::Cmi => "cmi",
        }
    }

    /// The matrix kind fixed by the case, if any. The finite and singular cases
    /// serve both kinds; the prescription's `kind` decides.
    pub fn fixed_kind(self) -> Option<MatrixKind> {
        use Case::*;
        match self {
            CompleteRat | InfSingRat | InfCmiRat | InfRmiRat => Some(MatrixKind::Rational),
            CompletePoly | InfSingPoly | InfCmiPoly | InfRmiPoly => Some(MatrixKind::Polynomial),
            FinSing | FinCmi | FinRmi | Sing | Rmi | Cmi => None,
        }
    }

    pub fn targets(self) -> Targets {
        use Case::*;
        let t = |finite, infinite, cmi, rmi| Targets {
            finite,
            infinite,
            cmi,
            rmi,
        };
        match self {
            CompleteRat | CompletePoly => t(true, true, true, true),
            InfSingPoly | InfSingRat => t(false, true, true, true),
            InfCmiPoly | InfCmiRat => t(false, true, true, false),
            InfRmiPoly | InfRmiRat => t(false, true, false, true),
            FinSing => t(true, false, true, true),
            FinCmi => t(true, false, true, false),
            FinRmi => t(true, false, false, true),
            Sing => t(false, false, true, true),
            Rmi => t(false, false, false, true),
            Cmi => t(false, false, true, false),
        }
    }

    /// The case prescribing exactly the targets present in `pre`, for its kind.
    pub fn of_prescription<F: Field>(pre: &Prescription<F>) -> Result<Case> {
        let have = Targets {
            finite: pre.finite.is_some(),
            infinite: pre.infinite.is_some(),
            cmi: pre.cmi.is_some(),
            rmi: pre.rmi.is_some(),
        };
        Case::ALL
            .into_iter()
            .find(|c| c.targets() == have && c.fixed_kind().is_none_or(|k| k == pre.kind))
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no decision covers this combination of targets (finite: {}, infinite: {}, cmi: {}, rmi: {})",
                    have.finite, have.infinite, have.cmi, have.rmi
                ))
            })
    }

    /// Cases whose sufficiency over a non-closed field is only guaranteed when the
    /// excess `A` (or `A′`) is nonpositive.
    pub fn has_field_caveat(self) -> bool {
        matches!(self, Case::InfSingPoly | Case::InfRmiPoly)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse {
                path: "case".into(),
                msg: format!("unknown case `{s}`"),
            })
    }
}

/// Prescribed data for the completed matrix `[R; W]` with `z` appended rows and rank
/// `r + x`. Only the targets relevant to the chosen [`Case`] are consulted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prescription<F: Field> {
    pub z: usize,
    pub x: usize,
    pub kind: MatrixKind,
    /// Invariant rational functions `ε_i/ψ_i`, `r + x` of them.
    pub finite: Option<Vec<RationalFunction<F>>>,
    /// Invariant orders at infinity, nondecreasing, `r + x` of them.
    pub infinite: Option<Vec<i64>>,
    /// Column minimal indices `d`, nonincreasing, `n − r − x` of them.
    pub cmi: Option<Vec<i64>>,
    /// Row minimal indices `v`, nonincreasing, `m + z − r − x` of them.
    pub rmi: Option<Vec<i64>>,
}

impl<F: Field> Prescription<F> {
    pub fn new(z: usize, x: usize, kind: MatrixKind) -> Self {
        Prescription {
            z,
            x,
            kind,
            finite: None,
            infinite: None,
            cmi: None,
            rmi: None,
        }
    }

    pub fn with_finite(mut self, f: Vec<RationalFunction<F>>) -> Self {
        self.finite = Some(f);
        self
    }

    /// Finite targets given as polynomial invariant factors.
    pub fn with_invariant_factors(self, b: Vec<Poly<F>>) -> Self {
        self.with_finite(b.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn with_infinite(mut self, q: Vec<i64>) -> Self {
        self.infinite = Some(q);
        self
    }

    pub fn with_cmi(mut self, d: Vec<i64>) -> Self {
        self.cmi = Some(d);
        self
    }

    pub fn with_rmi(mut self, v: Vec<i64>) -> Self {
        self.rmi = Some(v);
        self
    }

    /// The complete prescription read off the structural data of a completed matrix.
    pub fn from_data(z: usize, x: usize, kind: MatrixKind, data: &StructuralData<F>) -> Self {
        Prescription::new(z, x, kind)
            .with_finite(data.irf.clone())
            .with_infinite(data.inf_orders.clone())
            .with_cmi(data.cmi.clone())
            .with_rmi(data.rmi.clone())
    }

    /// Keeps only the targets prescribed by `case`, and the case's kind when fixed.
    pub fn project(&self, case: Case) -> Self {
        let t = case.targets();
        Prescription {
            z: self.z,
            x: self.x,
            kind: case.fixed_kind().unwrap_or(self.kind),
            finite: self.finite.clone().filter(|_| t.finite),
            infinite: self.infinite.clone().filter(|_| t.infinite),
            cmi: self.cmi.clone().filter(|_| t.cmi),
            rmi: self.rmi.clone().filter(|_| t.rmi),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("z".into(), json!(self.z));
        m.insert("x".into(), json!(self.x));
        m.insert("kind".into(), json!(self.kind.id()));
        if let Some(f) = &self.finite {
            let num: Vec<Value> = f.iter().map(|e| crate::json::poly_to_json(e.num())).collect();
            let den: Vec<Value> = f.iter().map(|e| crate::json::poly_to_json(e.den())).collect();
            m.insert("finite".into(), json!({"num": num, "den": den}));
        }
        if let Some(q) = &self.infinite {
            m.insert("infinite".into(), json!(q));
        }
        if let Some(d) = &self.cmi {
            m.insert("cmi".into(), json!(d));
        }
        if let Some(v) = &self.rmi {
            m.insert("rmi".into(), json!(v));
        }
        Value::Object(m)
    }
}

/// Outcome of a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// Every condition holds, but sufficiency is only established over algebraically
    /// closed fields.
    AlgebraicallyClosedOnly,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::AlgebraicallyClosedOnly => "yes-over-algebraically-closed-only",
        }
    }

    /// True unless the verdict is [`Verdict::No`].
    pub fn conditions_hold(self) -> bool {
        self != Verdict::No
    }
}

/// One evaluated condition with the values that were compared.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub id: &'static str,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    /// Evaluated for information only; never affects the verdict.
    pub informational: bool,
}

/// A derived quantity exposed in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Int(i64),
    Seq(Vec<i64>),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Int(k) => json!(k),
            Witness::Seq(s) => json!(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionReport {
    pub case: Case,
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    pub witnesses: BTreeMap<&'static str, Witness>,
    /// True when the verdict carries the algebraically-closed caveat.
    pub field_dependent: bool,
    /// Notes about degenerate inputs, e.g. `"rank-zero"`.
    pub flags: Vec<&'static str>,
}

impl DecisionReport {
    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn passes(&self, id: &str) -> Option<bool> {
        self.condition(id).map(|c| c.pass)
    }

    pub fn int(&self, name: &str) -> Option<i64> {
        match self.witnesses.get(name) {
            Some(Witness::Int(k)) => Some(*k),
            _ => None,
        }
    }

    pub fn seq(&self, name: &str) -> Option<&[i64]> {
        match self.witnesses.get(name) {
            Some(Witness::Seq(s)) => Some(s),
            _ => None,
        }
    }

    /// Ids of the gating conditions that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        self.conditions
            .iter()
            .filter(|c| !c.pass && !c.informational)
            .map(|c| c.id)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let conditions: Vec<Value> = self
            .conditions
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "pass": c.pass,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "informational": c.informational,
                })
            })
            .collect();
        let witnesses: serde_json::Map<String, Value> = self
            .witnesses
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_json()))
            .collect();
        json!({
            "case": self.case.id(),
            "feasible": self.verdict.id(),
            "conditions": conditions,
            "witnesses": witnesses,
            "field_dependent": self.field_dependent,
            "flags": self.flags,
        })
    }
}

/// Evaluates the conditions of `case` for completing a matrix with structural data
/// `s` according to `pre`.
pub fn decide<F: Field>(case: Case, s: &StructuralData<F>, pre: &Prescription<F>) -> Result<DecisionReport> {
    if let Some(k) = case.fixed_kind() {
        if pre.kind != k {
            return domain(format!("case {case} needs a {} prescription", k.id()));
        }
    }
    theorems::run(case, s, pre)
}

/// Every nondecreasing sequence of orders in `[lo, hi]` for which `case` does not reject
/// `pre` with its infinite targets replaced by that sequence, in lexicographic order.
pub fn scan_infinite<F: Field>(
    case: Case,
    s: &StructuralData<F>,
    pre: &Prescription<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<Vec<i64>>> {
    if !case.targets().infinite {
        return domain(format!("case {case} prescribes no orders at infinity"));
    }
    let len = s.rank + pre.x;
    let mut out = Vec::new();
    let mut q = vec![lo; len];
    let mut trial = pre.clone();
    loop {
        trial.infinite = Some(q.clone());
        if decide(case, s, &trial)?.verdict.conditions_hold() {
            out.push(q.clone());
        }
        // Next nondecreasing tuple: bump the last entry below `hi`, reset the tail to it.
        let Some(i) = (0..len).rev().find(|&i| q[i] < hi) else {
            return Ok(out);
        };
        q[i] += 1;
        let v = q[i];
        q[i + 1..].iter_mut().for_each(|e| *e = v);
    }
}
