//! Exact linear algebra: matrices, echelon forms, kernels, Smith normal
//! form, finitely presented modules and the maps between them.

mod echelon;
mod matrix;
mod quotient;
mod smith;
pub(crate) mod sparse;

pub use echelon::{echelon_and_kernel, kernel, left_kernel, rank, Echelon};
pub use matrix::Matrix;
pub use quotient::{induced_map, InducedMap, QuotientModule};
pub use smith::{smith_normal_form, Smith};

use crate::error::{Error, Result};
use crate::ring::{Ring, Structure};

fn require_linear_algebra<R: Ring>(r: &R) -> Result<()> {
    match r.structure() {
        Structure::Field | Structure::Euclidean => Ok(()),
        Structure::Other => Err(Error::UnsupportedRing(format!(
            "no effective linear algebra over {:?}",
            r.kind()
        ))),
    }
}

fn require_euclidean<R: Ring>(r: &R) -> Result<()> {
    require_linear_algebra(r)
}

/// `(g, s, t)` with `s·a + t·b = g` and `g` the canonical gcd.
pub(crate) fn xgcd<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem, R::Elem) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (r.one(), r.zero());
    let (mut t0, mut t1) = (r.zero(), r.one());
    while !r.is_zero(&r1) {
        let (q, rem) = r.div_rem(&r0, &r1);
        let s2 = r.sub(&s0, &r.mul(&q, &s1));
        let t2 = r.sub(&t0, &r.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let u = r.canonical_unit(&r0);
    (r.mul(&u, &r0), r.mul(&u, &s0), r.mul(&u, &t0))
}

/// Characteristic polynomial `det(x·I − A)`, coefficients from the constant
/// term upwards.
///
/// Hessenberg reduction over fields, Berkowitz's division-free recurrence
/// otherwise.
pub fn charpoly<R: Ring>(a: &Matrix<R>) -> Result<Vec<R::Elem>> {
    if !a.is_square() {
        return Err(crate::error::shape("characteristic polynomial of a non-square matrix"));
    }
    if a.ring().structure() == Structure::Field {
        Ok(charpoly_hessenberg(a))
    } else {
        Ok(charpoly_berkowitz(a))
    }
}

fn charpoly_hessenberg<R: Ring>(a: &Matrix<R>) -> Vec<R::Elem> {
    let r = a.ring();
    let n = a.rows();
    let mut h = a.row_vectors();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !r.is_zero(&h[i][m - 1])) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = r.inverse(&h[m][m - 1]).expect("nonzero pivot");
        for j in m + 1..n {
            if r.is_zero(&h[j][m - 1]) {
                continue;
            }
            let u = r.mul(&h[j][m - 1], &inv);
            for c in 0..n {
                let t = r.mul(&u, &h[m][c]);
                h[j][c] = r.sub(&h[j][c], &t);
            }
            for row in h.iter_mut() {
                let t = r.mul(&u, &row[j]);
                row[m] = r.add(&row[m], &t);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i (prod subdiag) h_{m-i,m} p_{m-i-1}
    let mut p: Vec<Vec<R::Elem>> = vec![vec![r.one()]];
    for m in 0..n {
        let mut next = crate::poly::mul(r, &[r.neg(&h[m][m]), r.one()], &p[m]);
        let mut t = r.one();
        for i in 1..=m {
            t = r.mul(&t, &h[m - i + 1][m - i]);
            let c = r.mul(&t, &h[m - i][m]);
            next = crate::poly::sub(r, &next, &crate::poly::scale(r, &p[m - i], &c));
        }
        p.push(next);
    }
    let mut out = p.pop().unwrap();
    out.resize(n + 1, r.zero());
    out
}

fn charpoly_berkowitz<R: Ring>(a: &Matrix<R>) -> Vec<R::Elem> {
    let r = a.ring();
    let n = a.rows();
    if n == 0 {
        return vec![r.one()];
    }
    // coefficients from the leading term downwards
    let mut c = vec![r.one(), r.neg(a.get(0, 0))];
    for k in 1..n {
        // leading (k+1)x(k+1) block: [[A_k, col], [row, diag]]
        let col: Vec<R::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        let row: Vec<R::Elem> = (0..k).map(|j| a.get(k, j).clone()).collect();
        let mut q = vec![r.one(), r.neg(a.get(k, k))];
        let mut v = col;
        for _ in 0..k {
            let dot = row.iter().zip(&v).fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)));
            q.push(r.neg(&dot));
            v = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(i, j), &v[j]))))
                .collect();
        }
        let next = (0..=k + 1)
            .map(|i| {
                (0..=i.min(k)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&q[i - j], &c[j])))
            })
            .collect();
        c = next;
    }
    c.reverse();
    c
}
