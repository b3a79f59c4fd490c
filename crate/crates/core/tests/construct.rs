mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rowcomp::construct::{
    build_beta_chain, complete_rows, lift_completion, reduce_rat_to_poly, verify_completion, Outcome, SearchConfig,
};
use rowcomp::decisions::{Case, MatrixKind, Prescription, Verdict};
use rowcomp::matstruct::{poly_structural_data, scale_by_poly, structural_data};
use rowcomp::{decide, Field, GaussianRational, Matrix, Poly, PolyMatrix, Rational, RationalFunction, RationalMatrix};

type Q = Rational;
type Qi = GaussianRational;

fn p<F: Field>(cs: &[i64]) -> Poly<F> {
    Poly::from_ints(cs)
}

/// `[[0, s, 1], [s²+1, 0, 0]]`.
fn ex_p<F: Field>() -> PolyMatrix<F> {
    Matrix::from_rows(vec![vec![p(&[]), p(&[0, 1]), p(&[1])], vec![p(&[1, 0, 1]), p(&[]), p(&[])]])
}

fn pre<F: Field>(q: &[i64], kind: MatrixKind) -> Prescription<F> {
    Prescription::new(1, 0, kind)
        .with_infinite(q.to_vec())
        .with_cmi(vec![1])
        .with_rmi(vec![5])
}

fn s_plus_i() -> Poly<Qi> {
    &Poly::s() + &Poly::constant(Qi::i())
}

fn s_minus_i() -> Poly<Qi> {
    &Poly::s() - &Poly::constant(Qi::i())
}

#[test]
fn beta_chain_without_excess() {
    let data = poly_structural_data(&ex_p::<Q>());
    let chain = build_beta_chain(&data, &pre(&[-6, -2], MatrixKind::Polynomial)).unwrap();
    assert_eq!(chain.a, 0);
    assert_eq!(chain.tau, Some(Poly::one()));
    assert_eq!(chain.beta, Some(vec![p(&[1]), p(&[1, 0, 1])]));
    assert_eq!(chain.ghw, None);
}

#[test]
fn beta_chain_with_excess_needs_a_root() {
    let pre_qi = pre::<Qi>(&[-6, -1], MatrixKind::Polynomial);
    let chain = build_beta_chain(&poly_structural_data(&ex_p::<Qi>()), &pre_qi).unwrap();
    assert_eq!(chain.a, 1);
    assert_eq!(chain.ghw, Some((1, 2, 1)));
    let tau = chain.tau.clone().unwrap();
    assert!(tau == s_plus_i() || tau == s_minus_i());
    assert_eq!(chain.beta, Some(vec![Poly::one(), tau]));

    let chain = build_beta_chain(&poly_structural_data(&ex_p::<Q>()), &pre(&[-6, -1], MatrixKind::Polynomial)).unwrap();
    assert_eq!(chain.a, 1);
    assert_eq!((chain.beta, chain.tau), (None, None));
}

#[test]
fn beta_chain_rejects_failing_conditions() {
    let data = poly_structural_data(&ex_p::<Q>());
    assert!(build_beta_chain(&data, &pre(&[0, 0], MatrixKind::Polynomial)).is_err());
}

#[test]
fn paper_certificate_verifies() {
    let r = ex_p::<Q>().to_rational();
    let w: PolyMatrix<Q> = Matrix::from_rows(vec![vec![p(&[]), p(&[0, 0, 0, 0, 0, 0, 1]), p(&[0, 0, 0, 0, 0, 1])]]);
    let v = verify_completion(&r, &w.to_rational(), &pre(&[-6, -2], MatrixKind::Polynomial)).unwrap();
    assert!(v.ok(), "{:?}", v.mismatches);
    let v = verify_completion(&r, &w.to_rational(), &pre(&[-6, -1], MatrixKind::Polynomial)).unwrap();
    assert_eq!(v.mismatches, vec!["infinite"]);
}

#[test]
fn search_finds_the_zero_excess_completion() {
    let r = ex_p::<Q>().to_rational();
    let target = pre(&[-6, -2], MatrixKind::Polynomial);
    let out = complete_rows(&r, &target, &SearchConfig::default()).unwrap();
    let c = out.completion().unwrap_or_else(|| panic!("{}", out.to_json()));
    assert!(verify_completion(&r, &c.w, &target).unwrap().ok());
    assert_eq!(c.stacked.inf_orders, vec![-6, -2]);
    assert_eq!(c.trace.steps, vec![Case::InfSingPoly, Case::CompletePoly]);
    // Deterministic.
    let again = complete_rows(&r, &target, &SearchConfig::default()).unwrap();
    assert_eq!(again.completion().unwrap().w, c.w);
}

#[test]
fn search_over_gaussian_rationals_uses_a_linear_factor() {
    let r = ex_p::<Qi>().to_rational();
    let target = pre(&[-6, -1], MatrixKind::Polynomial);
    let out = complete_rows(&r, &target, &SearchConfig::default()).unwrap();
    let c = out.completion().unwrap_or_else(|| panic!("{}", out.to_json()));
    let nums = c.stacked.numerators();
    assert_eq!(nums[0], Poly::one());
    assert!(nums[1] == s_plus_i() || nums[1] == s_minus_i());
    assert_eq!(c.stacked.inf_orders, vec![-6, -1]);
    assert_eq!((c.stacked.cmi.clone(), c.stacked.rmi.clone()), (vec![1], vec![5]));
}

#[test]
fn excess_over_rationals_is_an_obstruction() {
    let r = ex_p::<Q>().to_rational();
    let out = complete_rows(&r, &pre(&[-6, -1], MatrixKind::Polynomial), &SearchConfig::default()).unwrap();
    match out {
        Outcome::Obstructed { reason, trace } => {
            assert!(reason.contains("τ"), "{reason}");
            assert_eq!(trace.a, Some(1));
        }
        other => panic!("expected an obstruction, got {}", other.to_json()),
    }
}

#[test]
fn infeasible_prescriptions_skip_the_search() {
    let r = ex_p::<Q>().to_rational();
    let out = complete_rows(&r, &pre(&[0, 0], MatrixKind::Polynomial), &SearchConfig::default()).unwrap();
    assert!(matches!(out, Outcome::Infeasible(ref rep) if rep.verdict == Verdict::No));
}

#[test]
fn no_rows_means_no_completion_rows() {
    let r = ex_p::<Q>().to_rational();
    let data = structural_data(&r);
    let id = Prescription::from_data(0, 0, MatrixKind::Polynomial, &data);
    let out = complete_rows(&r, &id, &SearchConfig::default()).unwrap();
    let c = out.completion().unwrap();
    assert_eq!((c.w.rows(), c.w.cols()), (0, 3));
    assert_eq!(c.stacked, data);
}

#[test]
fn rational_reduction_for_the_scaled_example() {
    let r = ex_p::<Q>().to_rational();
    let red = reduce_rat_to_poly(&r, &pre(&[-6, -1], MatrixKind::Rational)).unwrap();
    assert_eq!(red.trace.psi1, p(&[0, 1]));
    assert_eq!(red.trace.z, 1);
    assert_eq!(red.trace.a_tilde, Some(1));
    assert_eq!(red.pre.infinite, Some(vec![-7, -2]));
    assert_eq!(red.trace.beta, Some(vec![p(&[1]), p(&[0, 1, 0, 1])]));
    assert_eq!(red.case, Case::CompletePoly);
    assert_eq!(red.p, ex_p::<Q>().scale(&p(&[0, 1])));
    assert_eq!(decide(red.case, &red.data, &red.pre).unwrap().verdict, Verdict::Yes);

    let w: PolyMatrix<Q> = Matrix::from_rows(vec![vec![&p(&[1, 0, 1]) * &p(&[1, 0, 0, 0, 0, 1]), p(&[]), p(&[])]]);
    let lifted = lift_completion(&w, &red.trace.psi1);
    let expected = &RationalFunction::from_poly(p(&[1, 0, 1])) * &RationalFunction::new(p(&[1, 0, 0, 0, 0, 1]), p(&[0, 1])).unwrap();
    assert_eq!(lifted[(0, 0)], expected);
    let v = verify_completion(&r, &lifted, &pre(&[-6, -1], MatrixKind::Rational)).unwrap();
    assert!(v.ok(), "{:?}", v.mismatches);
    assert_eq!(lift_completion(&w, &Poly::one()), w.to_rational());
}

#[test]
fn rational_search_for_the_scaled_example() {
    let r = ex_p::<Q>().to_rational();
    let target = pre(&[-6, -1], MatrixKind::Rational);
    let out = complete_rows(&r, &target, &SearchConfig::default()).unwrap();
    let c = out.completion().unwrap_or_else(|| panic!("{}", out.to_json()));
    assert!(verify_completion(&r, &c.w, &target).unwrap().ok());
    assert_eq!(c.trace.psi1, p(&[0, 1]));
}

#[test]
fn reduction_without_scaling() {
    // x = 0 and Ã = 0: τ = 1 and ψ₁ = φ₁.
    let r = ex_p::<Q>().to_rational();
    let red = reduce_rat_to_poly(&r, &pre(&[-6, -2], MatrixKind::Rational)).unwrap();
    assert_eq!(red.trace.a_tilde, Some(0));
    assert_eq!(red.trace.tau, Some(Poly::one()));
    assert_eq!(red.trace.psi1, Poly::one());
}

#[test]
fn search_config_json() {
    let cfg = SearchConfig::from_json(&serde_json::json!({"max_entry_degree": 3, "max_candidates": 10, "parallel": true}))
        .unwrap();
    assert_eq!(cfg.max_entry_degree, Some(3));
    assert_eq!(cfg.max_candidates, 10);
    assert!(cfg.parallel);
    assert_eq!(SearchConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    assert!(SearchConfig::from_json(&serde_json::json!({"depth": 1})).is_err());
}

#[test]
fn tight_budget_is_unknown_not_infeasible() {
    let r = ex_p::<Q>().to_rational();
    let cfg = SearchConfig {
        max_candidates: 3,
        ..SearchConfig::default()
    };
    let out = complete_rows(&r, &pre(&[-6, -2], MatrixKind::Polynomial), &cfg).unwrap();
    assert_eq!(out.status(), "unknown");
    let cfg = SearchConfig {
        max_entry_degree: Some(2),
        ..SearchConfig::default()
    };
    let out = complete_rows(&r, &pre(&[-6, -2], MatrixKind::Polynomial), &cfg).unwrap();
    assert_eq!(out.status(), "unknown");
}

fn random_rational(rng: &mut ChaCha8Rng, m: usize, n: usize) -> RationalMatrix<Q> {
    let den = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => p(&[1]),
        1 => p(&[0, 1]),
        _ => p(&[1, 1]),
    };
    let num = common::random_poly_matrix::<Q, _>(rng, m, n, 2, 3, 0.3);
    let rows: Vec<Vec<RationalFunction<Q>>> = (0..m)
        .map(|i| {
            let d = den(rng);
            num.row(i).iter().map(|e| RationalFunction::new(e.clone(), d.clone()).unwrap()).collect()
        })
        .collect();
    if rows.is_empty() { Matrix::empty(n) } else { Matrix::from_rows(rows) }
}

/// Achieved inf-sing-rat data with a rank increase.
fn random_rank_increasing(rng: &mut ChaCha8Rng) -> Option<(RationalMatrix<Q>, Prescription<Q>)> {
    let n = rng.gen_range(2..=3);
    let m = rng.gen_range(1..n);
    let z = rng.gen_range(1..=2);
    let r = random_rational(rng, m, n);
    let w = random_rational(rng, z, n);
    let s = structural_data(&r);
    let full = structural_data(&r.vstack(&w));
    let x = full.rank - s.rank;
    if x == 0 {
        return None;
    }
    let pre = Prescription::from_data(z, x, MatrixKind::Rational, &full).project(Case::InfSingRat);
    Some((r, pre))
}

/// The polynomial decision reached after scaling by `φ₁·s^(Z − deg φ₁)`.
fn scaled_passes(r: &RationalMatrix<Q>, pre: &Prescription<Q>, z: i64) -> bool {
    let s = structural_data(r);
    let phi1 = s.irf[0].den().clone();
    if z < phi1.deg() {
        return false;
    }
    let psi1 = &phi1 * &Poly::s().pow((z - phi1.deg()) as u64);
    let data = scale_by_poly(&s, &psi1).unwrap();
    let mut shifted = pre.clone();
    shifted.kind = MatrixKind::Polynomial;
    shifted.infinite = pre.infinite.as_ref().map(|q| q.iter().map(|v| v - z).collect());
    let rep = decide(Case::InfSingPoly, &data, &shifted).unwrap();
    rep.verdict.conditions_hold() && rep.int("A").unwrap() <= 0
}

#[test]
fn rank_increasing_reductions_pick_the_least_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    while seen < 60 {
        let Some((r, pre)) = random_rank_increasing(&mut rng) else { continue };
        if structural_data(&r).rank == 0 {
            continue;
        }
        seen += 1;
        let red = reduce_rat_to_poly(&r, &pre).unwrap();
        let z = red.trace.z;
        assert_eq!(red.case, Case::InfSingPoly);
        let rep = decide(red.case, &red.data, &red.pre).unwrap();
        assert!(rep.verdict.conditions_hold(), "{:?}", rep.failures());
        assert!(rep.int("A").unwrap() <= 0);
        assert!(scaled_passes(&r, &pre, z));
        assert!(!scaled_passes(&r, &pre, z - 1), "Z = {z} is not the least shift");
    }
}

/// Achieved inf-sing-poly data for a random polynomial pair.
fn random_poly_instance<F: Field>(rng: &mut ChaCha8Rng) -> (PolyMatrix<F>, Prescription<F>) {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=2);
    let z = rng.gen_range(0..=2);
    let pm = common::random_low_rank::<F, _>(rng, m, n, 2, 4);
    let w = common::random_poly_matrix::<F, _>(rng, z, n, 2, 4, 0.4);
    let s = poly_structural_data(&pm);
    let full = poly_structural_data(&pm.vstack(&w));
    let pre = Prescription::from_data(z, full.rank - s.rank, MatrixKind::Polynomial, &full).project(Case::InfSingPoly);
    (pm, pre)
}

#[test]
fn beta_chains_satisfy_the_degree_identity_and_interlace() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut built = 0;
    for _ in 0..300 {
        let (pm, pre) = random_poly_instance::<Qi>(&mut rng);
        let data = poly_structural_data(&pm);
        let chain = build_beta_chain(&data, &pre).unwrap();
        let Some(beta) = chain.beta else { continue };
        built += 1;
        let alpha = data.numerators();
        let excess = alpha.iter().map(|a| a.deg()).sum::<i64>() - beta.iter().map(|b| b.deg()).sum::<i64>();
        assert_eq!(chain.a, excess);
        assert!(beta.windows(2).all(|w| w[0].divides(&w[1])));
        let ext = |i: usize| beta.get(i).cloned().unwrap_or_else(Poly::zero);
        for (i, a) in alpha.iter().enumerate() {
            assert!(ext(i).divides(a) && a.divides(&ext(i + pre.z)), "β = {beta:?}, α = {alpha:?}");
        }
        if let Some((g, h, w)) = chain.ghw {
            let al = |k: usize| if k < 1 { Poly::one() } else { alpha[k - 1].clone() };
            let tau = chain.tau.as_ref().unwrap();
            assert_eq!(tau.deg(), w as i64);
            assert!(al(h - g).divides(tau) && tau.divides(&al(h - g + 1)));
            assert!(al(h - g).deg() <= w as i64 && (w as i64) < al(h - g + 1).deg());
        }
        // The full prescription built from β is feasible.
        let complete = pre.clone().with_invariant_factors(beta);
        assert_eq!(decide(Case::CompletePoly, &data, &complete).unwrap().verdict, Verdict::Yes);
    }
    assert!(built > 100, "only {built} chains built");
}
