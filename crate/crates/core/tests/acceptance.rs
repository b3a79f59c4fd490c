//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::synth::random_synth;
use common::{random_low_rank, random_poly, random_poly_matrix, random_rational_matrix};
use rowcomp::construct::{complete_rows, reduce_rat_to_poly, verify_completion, Outcome, SearchConfig};
use rowcomp::matstruct::{poly_structural_data, scale_by_poly, structural_data, unscale};
use rowcomp::oracle::{check_enumeration, enumerate, poly_matrices, DiffOptions, Enumeration, EnumerationSpace, Status};
use rowcomp::seqmaj::{check_lemma_hx, gen_majorizes, majorizes, union};
use rowcomp::{
    decide, scan_infinite, Case, Field, FieldDescriptor, Fp, GaussianRational, Matrix, MatrixKind, Poly, PolyMatrix,
    Prescription, Rational, RationalFunction, RationalMatrix, Verdict,
};

type Q = Rational;
type Qi = GaussianRational;
type F2 = Fp<2>;
type F5 = Fp<5>;

type CriterionResult = Result<String, String>;

fn p<F: Field>(cs: &[i64]) -> Poly<F> {
    Poly::from_ints(cs)
}

/// `[[0, s, 1], [s²+1, 0, 0]]`.
fn ex_p<F: Field>() -> PolyMatrix<F> {
    Matrix::from_rows(vec![vec![p(&[]), p(&[0, 1]), p(&[1])], vec![p(&[1, 0, 1]), p(&[]), p(&[])]])
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn c1_region_scan() -> CriterionResult {
    let start = Instant::now();
    let s = poly_structural_data(&ex_p::<Q>());
    let pre = Prescription::new(1, 0, MatrixKind::Polynomial).with_infinite(vec![0, 0]).with_cmi(vec![1]).with_rmi(vec![5]);
    let got: BTreeSet<Vec<i64>> = scan_infinite(Case::InfSingPoly, &s, &pre, -10, 0)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    let mut want = BTreeSet::new();
    for q1 in -10..=0i64 {
        for q2 in q1..=0 {
            if q1 <= -2 && -2 <= q2 && q2 <= -1 && (-8..=-6).contains(&(q1 + q2)) {
                want.insert(vec![q1, q2]);
            }
        }
    }
    ensure(got == want, || format!("scan gave {got:?}, expected {want:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} passing pairs, equal to the closed-form region", got.len()))
}

fn c2_golden() -> CriterionResult {
    let e = |e: rowcomp::Error| e.to_string();
    fn check<F: Field>(v: rowcomp::construct::Verification<F>, what: &str) -> Result<(), String> {
        ensure(v.ok(), || format!("{what}: mismatches {:?}", v.mismatches))
    }
    // (a) over Q(i).
    let s_plus_i = &Poly::<Qi>::s() + &Poly::constant(Qi::i());
    let w: PolyMatrix<Qi> =
        Matrix::from_rows(vec![vec![&p::<Qi>(&[0, 0, 0, 0, 0, 1]) * &s_plus_i, p(&[]), p(&[])]]);
    let pre = Prescription::new(1, 0, MatrixKind::Polynomial)
        .with_invariant_factors(vec![Poly::one(), s_plus_i.clone()])
        .with_infinite(vec![-6, -1])
        .with_cmi(vec![1])
        .with_rmi(vec![5]);
    check(verify_completion(&ex_p::<Qi>().to_rational(), &w.to_rational(), &pre).map_err(e)?, "(a)")?;

    // (b) over any field; checked over Q and F2.
    fn b<F: Field>() -> Result<(), String> {
        let w: PolyMatrix<F> = Matrix::from_rows(vec![vec![p(&[]), p(&[0, 0, 0, 0, 0, 0, 1]), p(&[0, 0, 0, 0, 0, 1])]]);
        let pre = Prescription::new(1, 0, MatrixKind::Polynomial).with_infinite(vec![-6, -2]).with_cmi(vec![1]).with_rmi(vec![5]);
        let v = verify_completion(&ex_p::<F>().to_rational(), &w.to_rational(), &pre).map_err(|e| e.to_string())?;
        ensure(v.ok(), || format!("(b): mismatches {:?}", v.mismatches))
    }
    b::<Q>()?;
    b::<F2>()?;

    // (c) the scaled example and its 1/s rescaling.
    let s = Poly::<Q>::s();
    let sp = ex_p::<Q>().scale(&s);
    let row = &p::<Q>(&[1, 0, 1]) * &p(&[1, 0, 0, 0, 0, 1]);
    let w: PolyMatrix<Q> = Matrix::from_rows(vec![vec![row, p(&[]), p(&[])]]);
    let pre = Prescription::new(1, 0, MatrixKind::Polynomial)
        .with_invariant_factors(vec![Poly::one(), p(&[0, 1, 0, 1])])
        .with_infinite(vec![-7, -2])
        .with_cmi(vec![1])
        .with_rmi(vec![5]);
    check(verify_completion(&sp.to_rational(), &w.to_rational(), &pre).map_err(e)?, "(c)")?;
    let rf = |n: &[i64], d: &[i64]| RationalFunction::new(p::<Q>(n), p(d)).unwrap();
    let pre = Prescription::new(1, 0, MatrixKind::Rational)
        .with_finite(vec![rf(&[1], &[0, 1]), rf(&[1, 0, 1], &[1])])
        .with_infinite(vec![-6, -1])
        .with_cmi(vec![1])
        .with_rmi(vec![5]);
    let r = sp.to_rational().divide(&s);
    let wt = w.to_rational().divide(&s);
    check(verify_completion(&r, &wt, &pre).map_err(e)?, "(c) scaled")?;
    Ok("(a), (b) and (c) attain their printed data".into())
}

fn index_sums<F: Field>(rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for i in 0..count {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let a: PolyMatrix<F> = if i % 2 == 0 {
            random_poly_matrix(rng, m, n, 3, 7, 0.3)
        } else {
            random_low_rank(rng, m, n, 3, 7)
        };
        let d = poly_structural_data(&a);
        ensure(d.index_sum() == 0, || format!("index sum {} for {a:?}", d.index_sum()))?;
    }
    Ok(())
}

fn c3_index_sum() -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    index_sums::<Q>(&mut rng, 500)?;
    index_sums::<F5>(&mut rng, 500)?;
    within(start, Duration::from_secs(60))?;
    Ok("500 matrices over Q and 500 over F5, no exceptions".into())
}

/// One enumeration per `(P, z)` of criterion 4's corpus, restricted to `x ≤ 1`.
struct Corpus {
    items: Vec<(PolyMatrix<F2>, EnumerationSpace, Enumeration<F2>)>,
}

fn corpus() -> Result<Corpus, String> {
    let mut items = Vec::new();
    for z in 1..=2 {
        let space = EnumerationSpace::new(FieldDescriptor::PrimeField(2), 2, 2, z, 1);
        for pm in poly_matrices::<F2>(2, 2, 1).map_err(|e| e.to_string())? {
            let mut en = enumerate(&pm, &space).map_err(|e| e.to_string())?;
            let r = en.base.rank;
            en.bundles.retain(|b| b.rank - r <= 1);
            items.push((pm, space.clone(), en));
        }
    }
    Ok(items).map(|items| Corpus { items })
}

fn c4_differential(corpus: &Corpus, spent: Duration) -> CriterionResult {
    let start = Instant::now();
    let opts = DiffOptions::default();
    let (mut agree, mut caveat, mut unresolved, mut beyond, mut bad) = (0, 0, 0, 0, Vec::new());
    for (pm, space, en) in &corpus.items {
        let rep = check_enumeration(pm, space, en, &opts).map_err(|e| e.to_string())?;
        agree += rep.count(Status::Agree);
        caveat += rep.count(Status::Caveat);
        unresolved += rep.count(Status::Unresolved);
        beyond += rep.count(Status::BeyondBound);
        bad.extend(rep.counterexamples().map(|r| r.to_json().to_string()).take(3));
    }
    ensure(bad.is_empty(), || format!("{} counterexamples, first: {}", bad.len(), bad[0]))?;
    within(start, Duration::from_secs(600).saturating_sub(spent))?;
    Ok(format!(
        "{} (P, z) pairs, 0 counterexamples, {agree} agree, {beyond} beyond bound, {caveat} caveat, {unresolved} unresolved",
        corpus.items.len()
    ))
}

fn ordered_partition(rng: &mut ChaCha8Rng, len: usize, max: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=max)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Prefix-sum dominance with equal totals, computed directly.
fn plain_majorizes(g: &[i64], a: &[i64]) -> bool {
    let mut gs = 0;
    let mut as_ = 0;
    for (x, y) in g.iter().zip(a) {
        gs += x;
        as_ += y;
        if gs > as_ {
            return false;
        }
    }
    gs == as_
}

fn c5_majorization() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let e = |e: rowcomp::Error| e.to_string();
    for _ in 0..10_000 {
        let (lu, lb) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let u = ordered_partition(&mut rng, lu, 6);
        let b = ordered_partition(&mut rng, lb, 6);
        let w = union(&u, &b);
        ensure(w.len() == u.len() + b.len() && gen_majorizes(&w, &u, &b).map_err(e)?, || {
            format!("union {w:?} of {u:?}, {b:?}")
        })?;
    }
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=5);
        let g = ordered_partition(&mut rng, len, 5);
        let d = ordered_partition(&mut rng, len, 5);
        ensure(gen_majorizes(&g, &d, &[]).map_err(e)? == (g == d), || format!("s = 0: {g:?}, {d:?}"))?;
        let a: Vec<i64> = (0..len).map(|_| rng.gen_range(-2..5)).collect();
        let want = plain_majorizes(&g, &a);
        ensure(gen_majorizes(&g, &[], &a).map_err(e)? == want && majorizes(&g, &a).map_err(e)? == want, || {
            format!("m = 0: {g:?}, {a:?}")
        })?;
    }
    let mut implied = 0;
    for _ in 0..10_000 {
        let (m, x) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let c = ordered_partition(&mut rng, m + x, 4);
        let d = ordered_partition(&mut rng, m, 4);
        let a = ordered_partition(&mut rng, x, 6);
        let hx = check_lemma_hx(&d, &c, x).map_err(e)?;
        ensure(!hx.tail_equal || hx.dominates, || format!("tail equal without dominance: {c:?}, {d:?}"))?;
        if gen_majorizes(&c, &d, &a).map_err(e)? {
            implied += 1;
            ensure(hx.tail_equal, || format!("majorized but tails differ: {c:?}, {d:?}, {a:?}"))?;
        }
    }
    Ok(format!("3 x 10^4 instances, no failures ({implied} majorized triples for the second clause)"))
}

fn c6_lattice() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let e = |e: rowcomp::Error| e.to_string();
    let partial: Vec<Case> = Case::ALL
        .into_iter()
        .filter(|c| *c != Case::CompleteRat && c.fixed_kind() != Some(MatrixKind::Polynomial))
        .collect();
    let (mut feasible, mut infeasible, mut tried) = (0, 0, 0);
    while feasible < 1_000 {
        tried += 1;
        ensure(tried < 2_000_000, || format!("only {feasible} feasible instances found"))?;
        let sy = random_synth(&mut rng);
        let (s, pre) = (sy.data::<Q>(), sy.pre::<Q>());
        let full = decide(Case::CompleteRat, &s, &pre).map_err(e)?.verdict == Verdict::Yes;
        if full {
            feasible += 1;
        }
        for &case in &partial {
            let ok = decide(case, &s, &pre.project(case)).map_err(e)?.verdict == Verdict::Yes;
            ensure(ok || !full, || format!("{case} fails on a feasible instance: {sy:?}"))?;
            if !ok {
                infeasible += 1;
            }
        }
    }
    Ok(format!("{feasible} feasible instances, every projection passes; {infeasible} failing projections all on infeasible data"))
}

fn c7_constructive(corpus: &Corpus) -> CriterionResult {
    let e = |e: rowcomp::Error| e.to_string();
    let cfg = SearchConfig::default();
    let cases: Vec<Case> = Case::ALL.into_iter().filter(|c| c.fixed_kind() != Some(MatrixKind::Polynomial)).collect();
    let (mut n, mut with_a) = (0, 0);
    for (pm, space, en) in &corpus.items {
        let r = pm.to_rational();
        let mut seen = BTreeSet::new();
        for b in &en.bundles {
            let x = b.rank - en.base.rank;
            for &case in &cases {
                let pre = Prescription::from_data(space.z, x, MatrixKind::Rational, b).project(case);
                if !seen.insert(pre.clone()) {
                    continue;
                }
                n += 1;
                let ctx = || format!("{case} on P = {pm:?}, {}", pre.to_json());
                let red = reduce_rat_to_poly(&r, &pre).map_err(|er| format!("reduction failed: {er}; {}", ctx()))?;
                let rep = decide(red.case, &red.data, &red.pre).map_err(e)?;
                ensure(rep.verdict.conditions_hold(), || format!("reduced decision fails {:?}; {}", rep.failures(), ctx()))?;
                if let Some(a) = rep.int("A") {
                    with_a += 1;
                    ensure(a <= 0, || format!("reduced instance has A = {a}; {}", ctx()))?;
                }
                match complete_rows(&r, &pre, &cfg).map_err(e)? {
                    Outcome::Found(c) => {
                        let v = verify_completion(&r, &c.w, &pre).map_err(e)?;
                        ensure(v.ok(), || format!("completion misses {:?}; {}", v.mismatches, ctx()))?;
                    }
                    other => return Err(format!("complete_rows: {}; {}", other.status(), ctx())),
                }
            }
        }
    }
    Ok(format!("{n} rational-kind instances reduced and completed ({with_a} report A, all A <= 0)"))
}

fn c8_round_trip() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let e = |e: rowcomp::Error| e.to_string();
    for _ in 0..1_000 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let r: RationalMatrix<Q> = random_rational_matrix(&mut rng, m, n, 2, 7);
        let d = structural_data(&r);
        let mut sc = random_poly::<Q, _>(&mut rng, 2, 7);
        if sc.is_zero() {
            sc = p(&[1, 1]);
        }
        let scaled = structural_data(&r.scale(&sc));
        ensure(scaled == scale_by_poly(&d, &sc).map_err(e)?, || format!("scaling by {sc:?} of {r:?}"))?;
        ensure(unscale(&scaled, &sc).map_err(e)? == d, || format!("unscaling by {sc:?} of {r:?}"))?;
        ensure(structural_data(&r.transpose()) == d.transpose(), || format!("transpose of {r:?}"))?;
    }
    Ok("1000 matrices: scaling, unscaling and transposition exact".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, start: Instant, res: CriterionResult| {
        let t = start.elapsed();
        match res {
            Ok(msg) => println!("criterion {n}: PASS ({t:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({t:.2?}) {msg}");
            }
        }
    };
    let t = Instant::now();
    report(1, t, c1_region_scan());
    let t = Instant::now();
    report(2, t, c2_golden());
    let t = Instant::now();
    report(3, t, c3_index_sum());
    let t = Instant::now();
    let corpus = corpus();
    let spent = t.elapsed();
    match &corpus {
        Ok(c) => {
            report(4, t, c4_differential(c, spent));
        }
        Err(msg) => report(4, t, Err(msg.clone())),
    }
    let t = Instant::now();
    report(5, t, c5_majorization());
    let t = Instant::now();
    report(6, t, c6_lattice());
    let t = Instant::now();
    match &corpus {
        Ok(c) => report(7, t, c7_constructive(c)),
        Err(msg) => report(7, t, Err(msg.clone())),
    }
    let t = Instant::now();
    report(8, t, c8_round_trip());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
