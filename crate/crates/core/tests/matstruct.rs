mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rowcomp::matstruct::{
    infinite_orders, is_minimal_basis, minimal_indices, poly_structural_data, rank, rational_rank,
    scale_by_poly, smith_form, smith_mcmillan, structural_data, unscale,
};
use rowcomp::{Field, Fp, GaussianRational, Matrix, Poly, PolyMatrix, Rational, RationalFunction};

type Q = Rational;

fn qp(cs: &[i64]) -> Poly<Q> {
    Poly::from_ints(cs)
}

fn example_p() -> PolyMatrix<Q> {
    Matrix::from_rows(vec![
        vec![qp(&[]), qp(&[0, 1]), qp(&[1])],
        vec![qp(&[1, 0, 1]), qp(&[]), qp(&[])],
    ])
}

#[test]
fn example_matrix_structure() {
    let d = poly_structural_data(&example_p());
    assert_eq!(d.rank, 2);
    assert_eq!(d.numerators(), vec![qp(&[1]), qp(&[1, 0, 1])]);
    assert!(d.is_polynomial());
    assert_eq!(d.inf_orders, vec![-2, -1]);
    assert_eq!(d.cmi, vec![1]);
    assert!(d.rmi.is_empty());
    assert_eq!(d.index_sum(), 0);
}

#[test]
fn scaled_example_structure() {
    // (1/s)·P has invariant factors 1/s, (s²+1)/s and orders (-1, 0).
    let r = example_p().to_rational().divide(&qp(&[0, 1]));
    let d = structural_data(&r);
    assert_eq!(d.irf[0], RationalFunction::new(qp(&[1]), qp(&[0, 1])).unwrap());
    assert_eq!(d.irf[1], RationalFunction::new(qp(&[1, 0, 1]), qp(&[0, 1])).unwrap());
    assert_eq!(d.inf_orders, vec![-1, 0]);
    assert_eq!(d.cmi, vec![1]);
}

#[test]
fn smith_transforms_diagonalize() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let p = random_poly_matrix::<Q, _>(&mut rng, m, n, 2, 7, 0.3);
        let sf = smith_form(&p, true);
        let (u, v) = (sf.left.unwrap(), sf.right.unwrap());
        assert_eq!(u.mul(&p).mul(&v), sf.diagonal);
        assert!(det(&u).is_constant() && !det(&u).is_zero());
        assert!(det(&v).is_constant() && !det(&v).is_zero());
        for w in sf.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
    }
}

#[test]
fn rank_zero_matrix() {
    let z: PolyMatrix<Q> = Matrix::zeros(2, 3);
    let d = poly_structural_data(&z);
    assert_eq!(d.rank, 0);
    assert!(d.irf.is_empty() && d.inf_orders.is_empty());
    assert_eq!(d.cmi, vec![0, 0, 0]);
    assert_eq!(d.rmi, vec![0, 0]);
}

fn check_against_minors<F: Field>(seed: u64, spread: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let p = if rng.gen_bool(0.5) {
            random_low_rank::<F, _>(&mut rng, m, n, 2, spread)
        } else {
            random_poly_matrix::<F, _>(&mut rng, m, n, 2, spread, 0.3)
        };
        let sf = smith_form(&p, false);
        assert_eq!(sf.invariant_factors, invariant_factors_by_minors(&p));
        assert_eq!(rank(&p), sf.invariant_factors.len());
        assert_eq!(infinite_orders(&p.to_rational()), orders_by_minors(&p));
        let (right, left) = minimal_indices(&p.to_rational());
        assert!(is_minimal_basis(&p, &right));
        assert!(is_minimal_basis(&p.transpose(), &left));
        let d = poly_structural_data(&p);
        assert_eq!(d.index_sum(), 0);
    }
}

#[test]
fn smith_and_orders_match_minors_q() {
    check_against_minors::<Q>(1, 9, 60);
}

#[test]
fn smith_and_orders_match_minors_f3() {
    check_against_minors::<Fp<3>>(2, 3, 150);
}

#[test]
fn smith_and_orders_match_minors_qi() {
    check_against_minors::<GaussianRational>(3, 8, 40);
}

#[test]
fn rational_orders_shift_with_lcd() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let r = random_rational_matrix::<Fp<5>, _>(&mut rng, 3, 3, 2, 5);
        let sm = smith_mcmillan(&r);
        let p = r.scale_to_poly(&sm.lcd);
        let shifted: Vec<i64> = orders_by_minors(&p).iter().map(|q| q + sm.lcd.deg()).collect();
        assert_eq!(infinite_orders(&r), shifted);
        assert_eq!(rational_rank(&r), rank(&p));
        for (a, f) in smith_form(&p, false).invariant_factors.iter().zip(&sm.factors) {
            assert_eq!(*f, RationalFunction::new(a.clone(), sm.lcd.clone()).unwrap());
        }
    }
}

#[test]
fn index_sum_and_scaling_on_rational_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..80 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let r = random_rational_matrix::<Q, _>(&mut rng, m, n, 2, 7);
        let d = structural_data(&r);
        assert_eq!(d.index_sum(), 0);
        let t = structural_data(&r.transpose());
        assert_eq!(t, d.transpose());
        let mut p = random_poly::<Q, _>(&mut rng, 2, 7);
        if p.is_zero() {
            p = qp(&[1, 1]);
        }
        let scaled = structural_data(&r.scale(&p));
        assert_eq!(scaled, scale_by_poly(&d, &p).unwrap());
        assert_eq!(unscale(&scaled, &p).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transpose_swaps_indices_f2(entries in prop::collection::vec(prop::collection::vec(0i64..2, 0..4), 6), shape in 0usize..3) {
        let (m, n) = [(2, 3), (3, 2), (1, 6)][shape];
        let p: PolyMatrix<Fp<2>> = Matrix::from_fn(m, n, |i, j| Poly::from_ints(&entries[i * n + j]));
        let d = poly_structural_data(&p);
        prop_assert_eq!(poly_structural_data(&p.transpose()), d.transpose());
        prop_assert_eq!(d.index_sum(), 0);
        prop_assert!(d.irf.iter().all(|f| !f.is_zero()));
        let _ = Poly::<Fp<2>>::zero();
    }
}
