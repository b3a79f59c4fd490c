use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// Smith form of a polynomial matrix: `left · P · right = diagonal` with unimodular
/// `left` and `right` (present when requested) and monic invariant factors
/// `α_1 | α_2 | … | α_r` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm<F: Field> {
    pub invariant_factors: Vec<Poly<F>>,
    pub diagonal: PolyMatrix<F>,
    pub left: Option<PolyMatrix<F>>,
    pub right: Option<PolyMatrix<F>>,
}

struct Work<F: Field> {
    a: PolyMatrix<F>,
    u: Option<PolyMatrix<F>>,
    v: Option<PolyMatrix<F>>,
}

impl<F: Field> Work<F> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// row_i ← row_i + q·row_k
    fn add_row(&mut self, i: usize, k: usize, q: &Poly<F>) {
        for j in 0..self.a.cols() {
            let t = &self.a[(k, j)] * q;
            if !t.is_zero() {
                self.a[(i, j)] = &self.a[(i, j)] + &t;
            }
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                let t = &u[(k, j)] * q;
                u[(i, j)] = &u[(i, j)] + &t;
            }
        }
    }

    /// col_j ← col_j + q·col_k
    fn add_col(&mut self, j: usize, k: usize, q: &Poly<F>) {
        for i in 0..self.a.rows() {
            let t = &self.a[(i, k)] * q;
            if !t.is_zero() {
                self.a[(i, j)] = &self.a[(i, j)] + &t;
            }
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows() {
                let t = &v[(i, k)] * q;
                v[(i, j)] = &v[(i, j)] + &t;
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: &F) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = self.a[(i, j)].scale(c);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                u[(i, j)] = u[(i, j)].scale(c);
            }
        }
    }

    /// Nonzero entry of least degree in the trailing block, ties broken by (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                if let Some(d) = self.a[(i, j)].degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn smith_form<F: Field>(p: &PolyMatrix<F>, with_transforms: bool) -> SmithForm<F> {
    let (m, n) = (p.rows(), p.cols());
    let mut w = Work {
        a: p.clone(),
        u: with_transforms.then(|| PolyMatrix::identity(m)),
        v: with_transforms.then(|| PolyMatrix::identity(n)),
    };
    let mut t = 0;
    'outer: while t < m.min(n) {
        loop {
            let Some((pi, pj)) = w.pivot(t) else {
                break 'outer;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(i, t)].div_rem(&w.a[(t, t)]);
                w.add_row(i, t, &-&q);
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(t, j)].div_rem(&w.a[(t, t)]);
                w.add_col(j, t, &-&q);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(t, t)].divides(&w.a[(i, j)])));
            match bad {
                Some(i) => w.add_row(t, i, &Poly::one()),
                None => break,
            }
        }
        let inv = w.a[(t, t)].lc().inv().expect("nonzero pivot");
        w.scale_row(t, &inv);
        t += 1;
    }
    let invariant_factors = (0..t).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm {
        invariant_factors,
        diagonal: w.a,
        left: w.u,
        right: w.v,
    }
}

/// Rank over the field of rational functions, by fraction-free elimination.
pub fn poly_rank<F: Field>(p: &PolyMatrix<F>) -> usize {
    let mut a = p.clone();
    let (m, n) = (a.rows(), a.cols());
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(pi) = (r..m).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, pi);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = &(&a[(r, c)] * &a[(i, j)]) - &(&a[(i, c)] * &a[(r, j)]);
                a[(i, j)] = v.exact_div(&prev);
            }
            a[(i, c)] = Poly::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}
