//! Brute-force differential testing of the decisions over small prime fields.
//!
//! For a fixed `P` every `W` with entries of bounded degree is stacked and its
//! structural data extracted. Necessity is checked on every achieved bundle, against
//! every decision. Sufficiency is checked on prescriptions assembled from observed
//! component values: each one that passes its decision must be achieved, either inside
//! the enumerated space or by a verified completion found outside it.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::construct::{complete_rows, Outcome, SearchConfig};
use crate::decisions::{decide, existence_complete, Case, MatrixKind, Prescription, Verdict};
use crate::error::{domain, parse_err, Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::json::{matrix_to_json, structural_data_to_json};
use crate::matrix::PolyMatrix;
use crate::matstruct::{poly_structural_data, StructuralData};
use crate::poly::{Poly, RationalFunction};

/// The finite set of `W` stacked under `P` by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpace {
    pub field: FieldDescriptor,
    pub m: usize,
    pub n: usize,
    pub z: usize,
    /// Entry-degree bound for `W`.
    pub max_deg: usize,
    /// Keep only completions of this rank.
    pub rank: Option<usize>,
    /// Keep only completions raising the rank by this much.
    pub x: Option<usize>,
    /// Largest number of `W` the oracle agrees to enumerate.
    pub cap: u64,
}

pub const DEFAULT_CAP: u64 = 1 << 20;

impl EnumerationSpace {
    pub fn new(field: FieldDescriptor, m: usize, n: usize, z: usize, max_deg: usize) -> Self {
        EnumerationSpace {
            field,
            m,
            n,
            z,
            max_deg,
            rank: None,
            x: None,
            cap: DEFAULT_CAP,
        }
    }

    /// `p^((max_deg+1)·z·n)`, or `None` past `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        let FieldDescriptor::PrimeField(p) = self.field else {
            return None;
        };
        let e = u32::try_from((self.max_deg + 1) * self.z * self.n).ok()?;
        p.checked_pow(e)
    }

    fn check<F: Field>(&self, p: &PolyMatrix<F>) -> Result<Vec<F>> {
        if !matches!(self.field, FieldDescriptor::PrimeField(_)) {
            return domain("the oracle enumerates over prime fields only");
        }
        if F::descriptor() != self.field {
            return domain(format!("space is over {} but P is over {}", self.field, F::descriptor()));
        }
        if (p.rows(), p.cols()) != (self.m, self.n) {
            return domain(format!("P is {}×{}, the space expects {}×{}", p.rows(), p.cols(), self.m, self.n));
        }
        match self.cardinality() {
            Some(c) if c <= self.cap => {}
            c => {
                return Err(Error::Unsupported(format!(
                    "enumeration of {} matrices exceeds the cap {}",
                    c.map_or("more than 2^64".to_string(), |c| c.to_string()),
                    self.cap
                )))
            }
        }
        Ok(F::elements().expect("prime fields are finite"))
    }

    fn keeps<F: Field>(&self, full: &StructuralData<F>, r: usize) -> bool {
        self.rank.is_none_or(|k| k == full.rank) && self.x.is_none_or(|x| full.rank == r + x)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse {
            path: "space".into(),
            msg: "expected an object".into(),
        })?;
        let field: FieldDescriptor = match obj.get("field").and_then(Value::as_str) {
            Some(s) => s.parse()?,
            None => return parse_err("space.field", "missing field descriptor"),
        };
        let int = |k: &str| -> Result<Option<usize>> {
            match obj.get(k) {
                None | Some(Value::Null) => Ok(None),
                Some(x) => x.as_u64().map(|u| Some(u as usize)).ok_or_else(|| Error::Parse {
                    path: format!("space.{k}"),
                    msg: "expected a nonnegative integer".into(),
                }),
            }
        };
        let req = |k: &str| -> Result<usize> {
            int(k)?.ok_or_else(|| Error::Parse {
                path: format!("space.{k}"),
                msg: "missing".into(),
            })
        };
        let mut s = EnumerationSpace::new(field, req("m")?, req("n")?, req("z")?, req("max_deg")?);
        s.rank = int("rank")?;
        s.x = int("x")?;
        if let Some(c) = int("cap")? {
            s.cap = c as u64;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "m": self.m,
            "n": self.n,
            "z": self.z,
            "max_deg": self.max_deg,
            "rank": self.rank,
            "x": self.x,
            "cap": self.cap,
        })
    }
}

/// Every polynomial matrix of the given shape with entries of degree `≤ max_deg`, in a
/// fixed order. The coefficient digits of index `t` in base `|F|` fill the entries
/// row by row, lowest degree first.
pub fn poly_matrices<F: Field>(rows: usize, cols: usize, max_deg: usize) -> Result<impl Iterator<Item = PolyMatrix<F>>> {
    let Some(elems) = F::elements() else {
        return domain("enumeration needs a finite field");
    };
    let slots = rows * cols * (max_deg + 1);
    let total = u32::try_from(slots)
        .ok()
        .and_then(|e| (elems.len() as u64).checked_pow(e))
        .ok_or_else(|| Error::Unsupported("enumeration size exceeds 2^64".into()))?;
    Ok((0..total).map(move |t| decode(&elems, rows, cols, max_deg, t)))
}

fn decode<F: Field>(elems: &[F], rows: usize, cols: usize, max_deg: usize, mut t: u64) -> PolyMatrix<F> {
    let q = elems.len() as u64;
    PolyMatrix::from_fn(rows, cols, |_, _| {
        let coeffs = (0..=max_deg)
            .map(|_| {
                let d = (t % q) as usize;
                t /= q;
                elems[d].clone()
            })
            .collect();
        Poly::new(coeffs)
    })
}

/// Calls `f` on the structural data of `[P; W]` for every `W` in the space.
fn for_each_stacked<F: Field>(
    p: &PolyMatrix<F>,
    space: &EnumerationSpace,
    mut f: impl FnMut(&PolyMatrix<F>, StructuralData<F>),
) -> Result<()> {
    let elems = space.check(p)?;
    let total = space.cardinality().expect("checked");
    for t in 0..total {
        let w = decode(&elems, space.z, space.n, space.max_deg, t);
        let stacked = if space.z == 0 { p.clone() } else { p.vstack(&w) };
        let data = poly_structural_data(&stacked);
        f(&w, data);
    }
    Ok(())
}

/// The outcome of stacking every `W` of a space under `P`.
#[derive(Clone, Debug)]
pub struct Enumeration<F: Field> {
    /// Structural data of `P`.
    pub base: StructuralData<F>,
    /// Distinct bundles achieved by the completions the space's filters keep.
    pub bundles: BTreeSet<StructuralData<F>>,
    pub enumerated: u64,
    /// Stacked matrices whose index sum does not vanish, with their `W`.
    pub index_sum_failures: Vec<(PolyMatrix<F>, StructuralData<F>)>,
}

pub fn enumerate<F: Field>(p: &PolyMatrix<F>, space: &EnumerationSpace) -> Result<Enumeration<F>> {
    let base = poly_structural_data(p);
    let r = base.rank;
    let mut bundles = BTreeSet::new();
    let mut enumerated = 0;
    let mut index_sum_failures = Vec::new();
    for_each_stacked(p, space, |w, data| {
        enumerated += 1;
        if data.index_sum() != 0 {
            index_sum_failures.push((w.clone(), data.clone()));
        }
        if space.keeps(&data, r) {
            bundles.insert(data);
        }
    })?;
    Ok(Enumeration {
        base,
        bundles,
        enumerated,
        index_sum_failures,
    })
}

/// The exact set of structural data achieved by `[P; W]` over the space.
pub fn enumerate_achievable<F: Field>(p: &PolyMatrix<F>, space: &EnumerationSpace) -> Result<BTreeSet<StructuralData<F>>> {
    Ok(enumerate(p, space)?.bundles)
}

/// How a checked prescription came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    /// The decision and the enumeration agree.
    Agree,
    /// Passes, not achieved in the space, but a verified completion exists outside it.
    BeyondBound,
    /// Polynomial kind with positive excess: passing yet unachieved is allowed over a
    /// field that is not algebraically closed.
    Caveat,
    /// Passes, not achieved in the space, and the fallback search was inconclusive.
    Unresolved,
    /// Disagreement that contradicts a theorem.
    Counterexample,
}

impl Status {
    pub fn id(self) -> &'static str {
        match self {
            Status::Agree => "agree",
            Status::BeyondBound => "beyond-bound",
            Status::Caveat => "caveat",
            Status::Unresolved => "unresolved",
            Status::Counterexample => "counterexample",
        }
    }
}

/// One line of the differential report.
#[derive(Clone, Debug)]
pub struct Record {
    /// `"necessity"`, `"sufficiency"` or `"index-sum"`.
    pub check: &'static str,
    /// Decision id, or `"existence"` for the complete-data existence predicate.
    pub decision: String,
    pub prescription: Value,
    pub verdict: String,
    pub achieved: bool,
    pub status: Status,
    pub detail: Value,
}

impl Record {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "decision": self.decision,
            "prescription": self.prescription,
            "verdict": self.verdict,
            "achieved": self.achieved,
            "status": self.status.id(),
            "detail": self.detail,
        })
    }
}

#[derive(Clone, Debug)]
pub struct DiffReport {
    pub p: Value,
    pub space: Value,
    /// Distinct bundles achieved.
    pub achieved: usize,
    /// Stacked matrices enumerated.
    pub enumerated: u64,
    pub records: Vec<Record>,
}

impl DiffReport {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Counterexample)
    }

    pub fn summary(&self) -> Value {
        let mut counts = serde_json::Map::new();
        for s in [Status::Agree, Status::BeyondBound, Status::Caveat, Status::Unresolved, Status::Counterexample] {
            counts.insert(s.id().into(), json!(self.count(s)));
        }
        json!({"P": self.p, "space": self.space, "enumerated": self.enumerated, "achieved": self.achieved, "counts": counts})
    }

    /// One JSON object per line: a summary line, then every record that is not a plain
    /// agreement unless `verbose`.
    pub fn to_json_lines(&self, verbose: bool) -> String {
        let mut out = self.summary().to_string();
        out.push('\n');
        for r in self.records.iter().filter(|r| verbose || r.status != Status::Agree) {
            out.push_str(&r.to_json().to_string());
            out.push('\n');
        }
        out
    }
}

/// Decisions checked by default: every case, and both kinds for the cases serving both.
pub fn all_decisions() -> Vec<(Case, MatrixKind)> {
    let mut out = Vec::new();
    for c in Case::ALL {
        match c.fixed_kind() {
            Some(k) => out.push((c, k)),
            None => {
                out.push((c, MatrixKind::Rational));
                out.push((c, MatrixKind::Polynomial));
            }
        }
    }
    out
}

/// Passing polynomial-kind verdicts whose sufficiency needs an algebraically closed field.
fn caveat_applies(kind: MatrixKind, verdict: Verdict) -> bool {
    kind == MatrixKind::Polynomial && verdict == Verdict::AlgebraicallyClosedOnly
}

/// Options for [`differential_check`].
#[derive(Clone, Debug)]
pub struct DiffOptions {
    pub decisions: Vec<(Case, MatrixKind)>,
    /// Sufficiency checks are skipped when false.
    pub sufficiency: bool,
    /// Search used for passing prescriptions not achieved inside the space.
    pub fallback: SearchConfig,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions {
            decisions: all_decisions(),
            sufficiency: true,
            fallback: SearchConfig {
                max_candidates: 20_000,
                ..SearchConfig::default()
            },
        }
    }
}

/// Compares the decisions with exhaustive enumeration over `space`.
pub fn differential_check<F: Field>(p: &PolyMatrix<F>, space: &EnumerationSpace, opts: &DiffOptions) -> Result<DiffReport> {
    let en = enumerate(p, space)?;
    check_enumeration(p, space, &en, opts)
}

/// [`differential_check`] on an enumeration already carried out.
pub fn check_enumeration<F: Field>(
    p: &PolyMatrix<F>,
    space: &EnumerationSpace,
    en: &Enumeration<F>,
    opts: &DiffOptions,
) -> Result<DiffReport> {
    let s = &en.base;
    let r = s.rank;
    let (m, z, n) = (space.m, space.z, space.n);
    let achieved = &en.bundles;
    let mut records: Vec<Record> = en
        .index_sum_failures
        .iter()
        .map(|(w, data)| Record {
            check: "index-sum",
            decision: "index-sum".into(),
            prescription: structural_data_to_json(data),
            verdict: data.index_sum().to_string(),
            achieved: true,
            status: Status::Counterexample,
            detail: json!({"W": matrix_to_json(&w.to_rational())}),
        })
        .collect();

    // Necessity on every achieved bundle.
    for full in achieved {
        let x = full.rank - r;
        let exists = existence_complete(full, m + z, n)?;
        if !exists {
            records.push(Record {
                check: "necessity",
                decision: "existence".into(),
                prescription: structural_data_to_json(full),
                verdict: "no".into(),
                achieved: true,
                status: Status::Counterexample,
                detail: Value::Null,
            });
        }
        for &(case, kind) in &opts.decisions {
            let pre = Prescription::from_data(z, x, kind, full).project(case);
            let rep = decide(case, s, &pre)?;
            let status = if rep.verdict.conditions_hold() { Status::Agree } else { Status::Counterexample };
            records.push(Record {
                check: "necessity",
                decision: format!("{case}/{}", kind.id()),
                prescription: pre.to_json(),
                verdict: rep.verdict.id().into(),
                achieved: true,
                status,
                detail: if status == Status::Agree { Value::Null } else { json!(rep.failures()) },
            });
        }
    }

    if opts.sufficiency {
        let r_mat = p.to_rational();
        let mut by_x: BTreeMap<usize, Vec<&StructuralData<F>>> = BTreeMap::new();
        for full in achieved {
            by_x.entry(full.rank - r).or_default().push(full);
        }
        for (&x, bundles) in &by_x {
            for &(case, kind) in &opts.decisions {
                let projected: BTreeSet<Prescription<F>> = bundles
                    .iter()
                    .map(|b| Prescription::from_data(z, x, kind, b).project(case))
                    .collect();
                for pre in candidates(case, kind, z, x, bundles) {
                    let rep = decide(case, s, &pre)?;
                    if !rep.verdict.conditions_hold() {
                        continue;
                    }
                    let hit = projected.contains(&pre);
                    let (status, detail) = if hit {
                        (Status::Agree, Value::Null)
                    } else if caveat_applies(kind, rep.verdict) {
                        (Status::Caveat, json!({"A": rep.int("A"), "A'": rep.int("A'")}))
                    } else {
                        match complete_rows(&r_mat, &pre, &opts.fallback)? {
                            Outcome::Found(c) => (Status::BeyondBound, json!({"W": matrix_to_json(&c.w)})),
                            Outcome::Unknown { reason, .. } => (Status::Unresolved, json!(reason)),
                            Outcome::Obstructed { reason, trace } => {
                                (Status::Counterexample, json!({"reason": reason, "trace": trace.to_json()}))
                            }
                            Outcome::Infeasible(rep) => (Status::Counterexample, rep.to_json()),
                        }
                    };
                    records.push(Record {
                        check: "sufficiency",
                        decision: format!("{case}/{}", kind.id()),
                        prescription: pre.to_json(),
                        verdict: rep.verdict.id().into(),
                        achieved: hit,
                        status,
                        detail,
                    });
                }
            }
        }
    }

    Ok(DiffReport {
        p: matrix_to_json(&p.to_rational()),
        space: space.to_json(),
        achieved: achieved.len(),
        enumerated: en.enumerated,
        records,
    })
}

/// Prescriptions for `case` whose components are each taken from some achieved bundle.
fn candidates<F: Field>(
    case: Case,
    kind: MatrixKind,
    z: usize,
    x: usize,
    bundles: &[&StructuralData<F>],
) -> BTreeSet<Prescription<F>> {
    let t = case.targets();
    let finite: Vec<Option<Vec<RationalFunction<F>>>> = if t.finite {
        let s: BTreeSet<Vec<RationalFunction<F>>> = bundles.iter().map(|b| b.irf.clone()).collect();
        s.into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let set = |on: bool, get: &dyn Fn(&StructuralData<F>) -> Vec<i64>| -> Vec<Option<Vec<i64>>> {
        if on {
            let s: BTreeSet<Vec<i64>> = bundles.iter().map(|b| get(b)).collect();
            s.into_iter().map(Some).collect()
        } else {
            vec![None]
        }
    };
    let inf = set(t.infinite, &|b| b.inf_orders.clone());
    let cmi = set(t.cmi, &|b| b.cmi.clone());
    let rmi = set(t.rmi, &|b| b.rmi.clone());
    let mut out = BTreeSet::new();
    for f in &finite {
        for q in &inf {
            for d in &cmi {
                for v in &rmi {
                    out.insert(Prescription {
                        z,
                        x,
                        kind,
                        finite: f.clone(),
                        infinite: q.clone(),
                        cmi: d.clone(),
                        rmi: v.clone(),
                    });
                }
            }
        }
    }
    out
}
