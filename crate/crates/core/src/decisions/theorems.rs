use std::collections::BTreeMap;

use serde_json::json;

use super::conditions::{self as cond, Instance};
use super::{Case, Condition, DecisionReport, MatrixKind, Prescription, Verdict, Witness};
use crate::error::{domain, Result};
use crate::field::Field;
use crate::matstruct::StructuralData;
use crate::seqmaj::{from_prefix_sums, sum_range};

/// True iff some matrix of size `m × n` has the complete structural data `target`,
/// i.e. its chains are valid and the index sum vanishes.
pub fn existence_complete<F: Field>(target: &StructuralData<F>, m: usize, n: usize) -> Result<bool> {
    let r = target.rank;
    if r > m.min(n) {
        return domain(format!("rank {r} exceeds min(m, n) = {}", m.min(n)));
    }
    if target.irf.len() != r || target.inf_orders.len() != r {
        return domain("irf and inf_orders must have length rank");
    }
    if target.irf.iter().any(|f| f.is_zero() || !f.num().is_monic()) {
        return domain("invariant rational functions must have monic nonzero numerators");
    }
    if target
        .irf
        .windows(2)
        .any(|w| !w[0].num().divides(w[1].num()) || !w[1].den().divides(w[0].den()))
    {
        return domain("invariant rational functions do not form a divisibility chain");
    }
    if target.inf_orders.windows(2).any(|w| w[0] > w[1]) {
        return domain("invariant orders at infinity must be nondecreasing");
    }
    let partition = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&k| k >= 0);
    if !partition(&target.cmi) || !partition(&target.rmi) {
        return domain("minimal indices must be partitions");
    }
    if target.cmi.len() != n - r || target.rmi.len() != m - r {
        return domain(format!("expected {} column and {} row minimal indices", n - r, m - r));
    }
    Ok(target.index_sum() == 0)
}

#[derive(Default)]
struct Out {
    conditions: Vec<Condition>,
    witnesses: BTreeMap<&'static str, Witness>,
    caveat: bool,
}

impl Out {
    fn push(&mut self, c: Condition) {
        self.conditions.push(c);
    }

    fn info(&mut self, mut c: Condition) {
        c.informational = true;
        self.conditions.push(c);
    }

    fn int(&mut self, name: &'static str, v: i64) {
        self.witnesses.insert(name, Witness::Int(v));
    }

    fn seq(&mut self, name: &'static str, v: Vec<i64>) {
        self.witnesses.insert(name, Witness::Seq(v));
    }
}

/// The sequence of length `len` whose `j`-th prefix sum is `prefix(j)`.
fn by_prefix(len: usize, prefix: impl Fn(i64) -> i64) -> Vec<i64> {
    let p: Vec<i64> = (1..=len as i64).map(prefix).collect();
    from_prefix_sums(&p)
}

pub(super) fn run<F: Field>(case: Case, s: &StructuralData<F>, pre: &Prescription<F>) -> Result<DecisionReport> {
    let inst = Instance::new(s, pre)?;
    let t = case.targets();
    for (wanted, present, what) in [
        (t.finite, pre.finite.is_some(), "finite"),
        (t.infinite, pre.infinite.is_some(), "infinite"),
        (t.cmi, pre.cmi.is_some(), "column minimal index"),
        (t.rmi, pre.rmi.is_some(), "row minimal index"),
    ] {
        if wanted && !present {
            return domain(format!("case {case} needs {what} targets"));
        }
    }
    if case.fixed_kind() == Some(MatrixKind::Polynomial) && !s.is_polynomial() {
        return domain(format!("case {case} needs a polynomial matrix"));
    }
    let mut out = Out::default();
    if t.rmi {
        out.int("V", inst.big_v());
    }
    match case {
        Case::CompleteRat => complete(&mut out, &inst, false)?,
        Case::CompletePoly => complete(&mut out, &inst, true)?,
        Case::InfSingPoly => inf_sing_poly(&mut out, &inst)?,
        Case::InfSingRat => inf_sing_rat(&mut out, &inst)?,
        Case::InfCmiPoly => inf_cmi_poly(&mut out, &inst)?,
        Case::InfCmiRat => {
            let (c, h) = cond::tail_equal(&inst)?;
            out.int("h_x", h as i64);
            out.push(c);
            out.push(cond::interlace_orders(&inst, "eqinterratioi"));
        }
        Case::InfRmiPoly => inf_rmi_poly(&mut out, &inst)?,
        Case::InfRmiRat => {
            out.push(cond::interlace_orders(&inst, "eqinterratioi"));
            rat_rmi_tail(&mut out, &inst)?;
        }
        Case::FinSing => {
            let (c, h) = cond::tail_equal(&inst)?;
            out.int("h_x", h as i64);
            out.push(c);
            fin_rmi(&mut out, &inst)?;
        }
        Case::FinCmi => {
            let (c, h) = cond::tail_equal(&inst)?;
            out.int("h_x", h as i64);
            out.push(c);
            out.push(cond::chain_num(&inst, "eqinterratnum"));
            out.push(cond::chain_den(&inst, "eqinterratden"));
        }
        Case::FinRmi => fin_rmi(&mut out, &inst)?,
        Case::Sing => {
            let (c, h) = cond::tail_equal(&inst)?;
            out.int("h_x", h as i64);
            out.push(c);
            singular_rmi(&mut out, &inst)?;
        }
        Case::Rmi => singular_rmi(&mut out, &inst)?,
        Case::Cmi => {
            let (c, h) = cond::tail_equal(&inst)?;
            out.int("h_x", h as i64);
            out.push(c);
        }
    }
    let holds = out.conditions.iter().all(|c| c.pass || c.informational);
    let verdict = match (holds, out.caveat) {
        (false, _) => Verdict::No,
        (true, true) => Verdict::AlgebraicallyClosedOnly,
        (true, false) => Verdict::Yes,
    };
    let mut flags = Vec::new();
    if inst.r == 0 {
        flags.push("rank-zero");
    }
    Ok(DecisionReport {
        case,
        verdict,
        conditions: out.conditions,
        witnesses: out.witnesses,
        field_dependent: verdict == Verdict::AlgebraicallyClosedOnly,
        flags,
    })
}

/// Complete structural data; `poly` selects the polynomial labels, for which `φ = ψ = 1`.
fn complete<F: Field>(out: &mut Out, inst: &Instance<F>, poly: bool) -> Result<()> {
    let (r, x, z) = (inst.r as i64, inst.x as i64, inst.z as i64);
    let big_v = inst.big_v();
    if poly {
        out.push(cond::chain_num(inst, "eqinterif"));
        out.push(cond::interlace_orders(inst, "eqinterpolioi"));
    } else {
        out.push(cond::chain_num(inst, "eqinterratnum"));
        out.push(cond::chain_den(inst, "eqinterratden"));
        out.push(cond::interlace_orders(inst, "eqinterratioi"));
    }
    let a = by_prefix(inst.x, |j| {
        big_v + sum_range(1, r + j, |i| inst.delta_eps(i + x - j)) - sum_range(1, r, |i| inst.delta4(i, i + x - j))
    });
    let b = by_prefix(inst.z - inst.x, |j| {
        big_v + sum_range(1, r - j, |i| inst.delta_eps(i + x + j) - inst.delta4(i, i + x + j))
    });
    let (ids, names) = if poly {
        (["eqcmimajpol", "eqrmimajpol", "eqdegsumpolioi"], ["a", "b"])
    } else {
        (["eqcmimajrat", "eqrmimajrat", "eqdegsumrat"], ["a_tilde", "b_tilde"])
    };
    out.push(cond::gen_majorization(ids[0], inst.c(), inst.d(), &a)?);
    out.push(cond::gen_majorization(ids[1], inst.v(), inst.u(), &b)?);
    let lhs = sum_range(1, r, |i| inst.delta4(i, i + x) - inst.delta_eps(i + x));
    out.push(cond::compare(ids[2], lhs, big_v, x == 0));
    out.seq(names[0], a);
    out.seq(names[1], b);

    let positive = |w: &[i64]| w.iter().filter(|&&k| k > 0).count() as i64;
    out.info(Condition {
        id: "eqetapol",
        pass: positive(inst.v()) >= positive(inst.u()),
        lhs: json!(positive(inst.v())),
        rhs: json!(positive(inst.u())),
        informational: true,
    });

    if !poly {
        // The equivalent form phrased through the column minimal indices.
        let cd = inst.c().iter().sum::<i64>() - inst.d().iter().sum::<i64>();
        let eta_total = sum_range(1, r, |i| inst.delta_eta(i));
        let base = cd + eta_total;
        let lhs = sum_range(1, r, |i| inst.delta4(i, i + x));
        let rhs = base - sum_range(1, x, |i| inst.delta_eps(i));
        out.info(cond::compare("eqdegsumratcdioi", lhs, rhs, x == z));
        let a2 = by_prefix(inst.x, |j| {
            base - sum_range(1, x - j, |i| inst.delta_eps(i)) - sum_range(1, r, |i| inst.delta4(i, i + x - j))
        });
        let b2 = by_prefix(inst.z - inst.x, |j| {
            base - sum_range(1, x + j.min(r), |i| inst.delta_eps(i))
                - sum_range(1, r - j, |i| inst.delta4(i, i + x + j))
        });
        out.info(cond::gen_majorization("eqdeftildeacdioi", inst.c(), inst.d(), &a2)?);
        out.info(cond::gen_majorization("eqdeftildebcdbioi", inst.v(), inst.u(), &b2)?);
        out.seq("a_tilde_cd", a2);
        out.seq("b_tilde_cd", b2);
    }
    Ok(())
}

/// `Σ_{i=1}^r max{p_i, q_{i+x}} − Σ_{i=1}^r q_{i+x}`.
fn order_excess<F: Field>(inst: &Instance<F>) -> i64 {
    let (r, x) = (inst.r as i64, inst.x as i64);
    sum_range(1, r, |i| inst.p(i).max(inst.q(i + x)) - inst.q(i + x))
}

/// Prefix sums shared by `â` and `â′`: `V + Σ_{i=1}^{r+j} q_{i+x−j} − Σ_{i=1}^r max{p_i, q_{i+x−j}} − A`.
fn a_hat<F: Field>(inst: &Instance<F>, big_a: i64) -> Vec<i64> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    by_prefix(inst.x, |j| {
        big_v + sum_range(1, r + j, |i| inst.q(i + x - j)) - sum_range(1, r, |i| inst.p(i).max(inst.q(i + x - j)))
            - big_a
    })
}

/// Prefix sums shared by `b̂` and `b̂′`.
fn b_hat<F: Field>(inst: &Instance<F>, big_a: i64) -> Vec<i64> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    by_prefix(inst.z - inst.x, |j| {
        big_v
            + 0.min(sum_range(r - j + 1, r, |i| inst.alpha_deg(i)) - big_a)
            + sum_range(1, r - j, |i| inst.q(i + x + j) - inst.p(i).max(inst.q(i + x + j)))
    })
}

/// `Σ_{i=r+x−z+1}^r deg α_i`.
fn alpha_tail<F: Field>(inst: &Instance<F>) -> i64 {
    let (r, x, z) = (inst.r as i64, inst.x as i64, inst.z as i64);
    sum_range(r + x - z + 1, r, |i| inst.alpha_deg(i))
}

fn inf_sing_poly<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    let big_a = sum_range(1, r + x, |i| inst.q(i)) - sum_range(1, r, |i| inst.p(i)) + inst.d().iter().sum::<i64>()
        - inst.c().iter().sum::<i64>()
        + big_v;
    out.int("A", big_a);
    out.push(cond::interlace_orders(inst, "eqinterpolioi"));
    out.push(cond::compare("eqAleq", big_a, alpha_tail(inst), false));
    out.push(cond::compare("eqvusAioi", big_a.max(0) + order_excess(inst), big_v, false));
    let a = a_hat(inst, big_a);
    let b = b_hat(inst, big_a);
    out.push(cond::gen_majorization("eqcmimajpolhatsAioi", inst.c(), inst.d(), &a)?);
    out.push(cond::gen_majorization("eqrmimajpolhatsAioi", inst.v(), inst.u(), &b)?);
    out.seq("a_hat", a);
    out.seq("b_hat", b);
    out.caveat = big_a > 0;
    Ok(())
}

/// `eqvusAioirat` and `eqrmimajrathatsAioi`.
fn rat_rmi_tail<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    out.push(cond::compare("eqvusAioirat", order_excess(inst), big_v, false));
    let b = by_prefix(inst.z - inst.x, |j| {
        big_v + sum_range(1, r - j, |i| inst.q(i + x + j) - inst.p(i).max(inst.q(i + x + j)))
    });
    out.push(cond::gen_majorization("eqrmimajrathatsAioi", inst.v(), inst.u(), &b)?);
    out.seq("b_hat_tilde", b);
    Ok(())
}

fn inf_sing_rat<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let (c, h) = cond::tail_equal(inst)?;
    out.int("h_x", h as i64);
    out.push(c);
    out.push(cond::interlace_orders(inst, "eqinterratioi"));
    rat_rmi_tail(out, inst)?;
    let atilde = sum_range(1, r + x, |i| inst.q(i)) - sum_range(1, r, |i| inst.p(i)) + inst.d().iter().sum::<i64>()
        - inst.c().iter().sum::<i64>()
        + inst.big_v();
    out.int("Atilde", atilde);
    Ok(())
}

fn inf_cmi_poly<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let cd = inst.c().iter().sum::<i64>() - inst.d().iter().sum::<i64>();
    let p_total = sum_range(1, r, |i| inst.p(i));
    out.push(cond::interlace_orders(inst, "eqinterpolioi"));
    let rhs = sum_range(1, r, |i| inst.p(i).max(inst.q(i + x))) + sum_range(1, x, |i| inst.q(i)) - p_total;
    out.push(cond::compare("eqcdioicmi", rhs, cd, false));
    let a = by_prefix(inst.x, |j| {
        cd + p_total - sum_range(1, x - j, |i| inst.q(i)) - sum_range(1, r, |i| inst.p(i).max(inst.q(i + x - j)))
    });
    out.push(cond::gen_majorization("eqcmimajhatap", inst.c(), inst.d(), &a)?);
    out.seq("a_hat'", a);
    Ok(())
}

fn inf_rmi_poly<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    let big_a = sum_range(1, r + x, |i| inst.q(i))
        - sum_range(1, r, |i| inst.p(i))
        - inst.c()[..inst.x].iter().sum::<i64>()
        + big_v;
    out.int("A'", big_a);
    out.push(cond::interlace_orders(inst, "eqinterpolioi"));
    out.push(cond::compare("eqApleq", big_a, alpha_tail(inst), false));
    out.push(cond::compare("eqvusApioi", big_a.max(0) + order_excess(inst), big_v, false));
    let a = a_hat(inst, big_a);
    let b = b_hat(inst, big_a);
    out.push(cond::majorization("eqcmimajpolhatsAioirmi", &inst.c()[..inst.x], &a)?);
    out.push(cond::gen_majorization("eqrmimajpolhatsAioicmi", inst.v(), inst.u(), &b)?);
    out.seq("a_hat'", a);
    out.seq("b_hat'", b);
    out.caveat = big_a > 0;
    Ok(())
}

/// Divisibility chains, `eqvusifcmirmigrat` and `eqrmimajratif`.
fn fin_rmi<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let (r, x) = (inst.r as i64, inst.x as i64);
    let big_v = inst.big_v();
    out.push(cond::chain_num(inst, "eqinterratnum"));
    out.push(cond::chain_den(inst, "eqinterratden"));
    let rhs = sum_range(1, r, |i| inst.delta2(i, i + x) - inst.delta_eps_deg(i + x));
    out.push(cond::compare("eqvusifcmirmigrat", rhs, big_v, false));
    let b = by_prefix(inst.z - inst.x, |j| {
        big_v + sum_range(1, r - j, |i| inst.delta_eps_deg(i + x + j) - inst.delta2(i, i + x + j))
    });
    out.push(cond::gen_majorization("eqrmimajratif", inst.v(), inst.u(), &b)?);
    out.seq("b_hat_tilde'", b);
    if inst.pre.cmi.is_some() {
        let btilde = sum_range(1, r + x, |i| inst.delta_eps_deg(i)) - sum_range(1, r, |i| inst.delta_eta_deg(i))
            + inst.d().iter().sum::<i64>()
            - inst.c().iter().sum::<i64>()
            + big_v;
        out.int("Btilde", btilde);
    }
    Ok(())
}

/// `equvgequ` and `eqvmaydif`.
fn singular_rmi<F: Field>(out: &mut Out, inst: &Instance<F>) -> Result<()> {
    let big_v = inst.big_v();
    out.push(cond::compare("equvgequ", 0, big_v, false));
    let mut b = vec![0; inst.z - inst.x];
    if let Some(first) = b.first_mut() {
        *first = big_v;
    }
    out.push(cond::gen_majorization("eqvmaydif", inst.v(), inst.u(), &b)?);
    out.seq("b_hat''", b);
    Ok(())
}
