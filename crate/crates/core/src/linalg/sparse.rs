//! Sparse row vectors: sorted `(column, nonzero entry)` pairs.

use crate::ring::Ring;

pub type SparseVec<E> = Vec<(usize, E)>;

pub fn from_dense<R: Ring>(r: &R, v: &[R::Elem]) -> SparseVec<R::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !r.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<R: Ring>(r: &R, v: &SparseVec<R::Elem>, n: usize) -> Vec<R::Elem> {
    let mut out = vec![r.zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn scale<R: Ring>(r: &R, c: &R::Elem, x: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    if r.is_zero(c) {
        return Vec::new();
    }
    x.iter()
        .filter_map(|(i, v)| {
            let p = r.mul(c, v);
            (!r.is_zero(&p)).then_some((*i, p))
        })
        .collect()
}

/// `a·x + b·y`.
pub fn combine<R: Ring>(
    r: &R,
    a: &R::Elem,
    x: &SparseVec<R::Elem>,
    b: &R::Elem,
    y: &SparseVec<R::Elem>,
) -> SparseVec<R::Elem> {
    let a_one = r.is_one(a);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            let v = if a_one { x[i].1.clone() } else { r.mul(a, &x[i].1) };
            if !r.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if take_y {
            let v = r.mul(b, &y[j].1);
            if !r.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let xv = if a_one { x[i].1.clone() } else { r.mul(a, &x[i].1) };
            let v = r.add(&xv, &r.mul(b, &y[j].1));
            if !r.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `x - c·y`.
pub fn sub_multiple<R: Ring>(
    r: &R,
    x: &SparseVec<R::Elem>,
    c: &R::Elem,
    y: &SparseVec<R::Elem>,
) -> SparseVec<R::Elem> {
    combine(r, &r.one(), x, &r.neg(c), y)
}

pub fn get<E>(x: &SparseVec<E>, col: usize) -> Option<&E> {
    x.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &x[k].1)
}
