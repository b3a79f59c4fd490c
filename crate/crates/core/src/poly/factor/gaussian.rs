//! Factorization over ℚ(i) through norms down to ℚ.

use num_traits::Zero;

use crate::error::Result;
use crate::field::{Field, GaussianRational, Rational};
use crate::poly::Poly;

pub(crate) fn factor_squarefree(f: &Poly<GaussianRational>) -> Result<Vec<Poly<GaussianRational>>> {
    let f = f.monic();
    for k in shifts() {
        let i_k = GaussianRational::new(Rational::zero(), Rational::from_i64(k));
        // g(s) = f(s - k·i), whose norm is square-free for all but finitely many k.
        let g = f.compose(&Poly::new(vec![-i_k.clone(), GaussianRational::from_i64(1)]));
        let norm = &g * &conjugate(&g);
        let n = real_part(&norm);
        if !n.gcd(&n.derivative()).is_one() {
            continue;
        }
        let mut out = Vec::new();
        for nj in Rational::factor_squarefree(&n)? {
            let h = g.gcd(&lift(&nj));
            let back = h.compose(&Poly::new(vec![i_k.clone(), GaussianRational::from_i64(1)]));
            out.push(back.monic());
        }
        out.sort();
        return Ok(out);
    }
    unreachable!("shift sequence is infinite")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

fn conjugate(p: &Poly<GaussianRational>) -> Poly<GaussianRational> {
    Poly::new(p.coeffs().iter().map(|c| c.conj()).collect())
}

fn real_part(p: &Poly<GaussianRational>) -> Poly<Rational> {
    Poly::new(p.coeffs().iter().map(|c| c.re.clone()).collect())
}

pub(crate) fn lift(p: &Poly<Rational>) -> Poly<GaussianRational> {
    Poly::new(p.coeffs().iter().cloned().map(GaussianRational::from_rational).collect())
}
