use std::cmp::Ordering;

use super::{require_euclidean, Matrix};
use crate::error::Result;
use crate::ring::Ring;

/// Smith normal form `U·A·W = D`.
#[derive(Clone, Debug)]
pub struct Smith<R: Ring> {
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub w: Matrix<R>,
}

impl<R: Ring> Smith<R> {
    /// Diagonal entries `d_1 | d_2 | …`, including zeros.
    pub fn diagonal(&self) -> Vec<R::Elem> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

pub(crate) struct SmithData<R: Ring> {
    /// Nonzero diagonal entries; their count is the rank.
    pub diag: Vec<R::Elem>,
    pub u: Option<Vec<Vec<R::Elem>>>,
    pub w: Vec<Vec<R::Elem>>,
    pub w_inv: Vec<Vec<R::Elem>>,
}

fn identity<R: Ring>(r: &R, n: usize) -> Vec<Vec<R::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

struct State<'a, R: Ring> {
    r: &'a R,
    a: Vec<Vec<R::Elem>>,
    u: Option<Vec<Vec<R::Elem>>>,
    w: Vec<Vec<R::Elem>>,
    w_inv: Vec<Vec<R::Elem>>,
}

impl<R: Ring> State<'_, R> {
    /// row_i -= q row_t
    fn row_op(&mut self, i: usize, t: usize, q: &R::Elem) {
        let r = self.r;
        let src = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !r.is_zero(y) {
                *x = r.sub(x, &r.mul(q, y));
            }
        }
        if let Some(u) = &mut self.u {
            let src = u[t].clone();
            for (x, y) in u[i].iter_mut().zip(&src) {
                if !r.is_zero(y) {
                    *x = r.sub(x, &r.mul(q, y));
                }
            }
        }
    }

    /// col_j -= q col_t
    fn col_op(&mut self, j: usize, t: usize, q: &R::Elem) {
        let r = self.r;
        for row in self.a.iter_mut() {
            if !r.is_zero(&row[t]) {
                row[j] = r.sub(&row[j], &r.mul(q, &row[t]));
            }
        }
        for row in self.w.iter_mut() {
            if !r.is_zero(&row[t]) {
                row[j] = r.sub(&row[j], &r.mul(q, &row[t]));
            }
        }
        // inverse: row_t += q row_j
        let src = self.w_inv[j].clone();
        for (x, y) in self.w_inv[t].iter_mut().zip(&src) {
            if !r.is_zero(y) {
                *x = r.add(x, &r.mul(q, y));
            }
        }
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        self.a.swap(i, t);
        if let Some(u) = &mut self.u {
            u.swap(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        for row in self.a.iter_mut().chain(self.w.iter_mut()) {
            row.swap(j, t);
        }
        self.w_inv.swap(j, t);
    }

    fn smaller(&self, x: &R::Elem, best: Option<&R::Elem>) -> bool {
        !self.r.is_zero(x) && best.is_none_or(|b| self.r.cmp_size(x, b) == Ordering::Less)
    }
}

pub(crate) fn smith_data<R: Ring>(
    r: &R,
    a: Vec<Vec<R::Elem>>,
    cols: usize,
    track_u: bool,
) -> SmithData<R> {
    let m = a.len();
    let n = cols;
    let mut st = State {
        r,
        a,
        u: track_u.then(|| identity(r, m)),
        w: identity(r, n),
        w_inv: identity(r, n),
    };
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let cur = best.map(|(bi, bj)| &st.a[bi][bj]);
                if st.smaller(&st.a[i][j], cur) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.swap_rows(bi, t);
        st.swap_cols(bj, t);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !r.is_zero(&st.a[i][t]) {
                    let q = r.div_rem(&st.a[i][t], &st.a[t][t]).0;
                    st.row_op(i, t, &q);
                    clean &= r.is_zero(&st.a[i][t]);
                }
            }
            for j in t + 1..n {
                if !r.is_zero(&st.a[t][j]) {
                    let q = r.div_rem(&st.a[t][j], &st.a[t][t]).0;
                    st.col_op(j, t, &q);
                    clean &= r.is_zero(&st.a[t][j]);
                }
            }
            if clean {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !r.is_zero(&r.div_rem(&st.a[i][j], &st.a[t][t]).1))
                });
                match bad {
                    None => break,
                    Some(i) => {
                        let minus_one = r.neg(&r.one());
                        st.row_op(t, i, &minus_one);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t onto the diagonal
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..m {
                let cur = best.map(|(bi, bj)| &st.a[bi][bj]);
                if st.smaller(&st.a[i][t], cur) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..n {
                let cur = best.map(|(bi, bj)| &st.a[bi][bj]);
                if st.smaller(&st.a[t][j], cur) {
                    best = Some((t, j));
                }
            }
            if let Some((bi, bj)) = best {
                if r.cmp_size(&st.a[bi][bj], &st.a[t][t]) == Ordering::Less {
                    if bi != t {
                        st.swap_rows(bi, t);
                    } else {
                        st.swap_cols(bj, t);
                    }
                }
            }
        }
        let unit = r.canonical_unit(&st.a[t][t]);
        if !r.is_one(&unit) {
            for x in st.a[t].iter_mut() {
                *x = r.mul(&unit, x);
            }
            if let Some(u) = &mut st.u {
                for x in u[t].iter_mut() {
                    *x = r.mul(&unit, x);
                }
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| st.a[i][i].clone()).collect();
    SmithData {
        diag,
        u: st.u,
        w: st.w,
        w_inv: st.w_inv,
    }
}

/// Smith normal form over a Euclidean domain (or a field).
pub fn smith_normal_form<R: Ring>(a: &Matrix<R>) -> Result<Smith<R>> {
    let r = a.ring().clone();
    require_euclidean(&r)?;
    let data = smith_data(&r, a.row_vectors(), a.cols(), true);
    let mut d = Matrix::zero(r.clone(), a.rows(), a.cols());
    for (i, x) in data.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    let u = Matrix::from_rows(r.clone(), a.rows(), data.u.unwrap())?;
    let w = Matrix::from_rows(r, a.cols(), data.w)?;
    Ok(Smith { d, u, w })
}
