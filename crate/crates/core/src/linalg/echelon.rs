use super::sparse::{self, SparseVec};
use super::{require_linear_algebra, xgcd, Matrix};
use crate::error::{Error, Result};
use crate::ring::{Ring, Structure};

const NO_PIVOT: usize = usize::MAX;

/// Row-echelon basis of a submodule of `R^cols`.
///
/// Rows are sorted by pivot column; each pivot entry is 1 over a field and
/// positive over the integers. After [`Echelon::reduce`] the basis is the
/// reduced row-echelon form (fields) or the Hermite normal form (integers),
/// which is unique for the submodule.
#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    ring: R,
    cols: usize,
    rows: Vec<SparseVec<R::Elem>>,
    pivot_index: Vec<usize>,
    reduced: bool,
}

impl<R: Ring> Echelon<R> {
    pub fn empty(ring: R, cols: usize) -> Result<Self> {
        require_linear_algebra(&ring)?;
        Ok(Echelon {
            ring,
            cols,
            rows: Vec::new(),
            pivot_index: vec![NO_PIVOT; cols],
            reduced: true,
        })
    }

    /// Echelon basis of the span of dense `rows`.
    pub fn from_rows(ring: R, cols: usize, rows: &[Vec<R::Elem>]) -> Result<Self> {
        let mut e = Self::empty(ring, cols)?;
        for r in rows {
            if r.len() != cols {
                return Err(crate::error::shape(format!(
                    "row of length {} in a {cols}-column system",
                    r.len()
                )));
            }
            let v = sparse::from_dense(&e.ring, r);
            e.insert(v);
        }
        e.sort();
        Ok(e)
    }

    pub(crate) fn from_sparse(ring: R, cols: usize, rows: Vec<SparseVec<R::Elem>>) -> Result<Self> {
        let mut e = Self::empty(ring, cols)?;
        for v in rows {
            debug_assert!(v.last().is_none_or(|(c, _)| *c < cols));
            e.insert(v);
        }
        e.sort();
        Ok(e)
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<R>) -> Result<Self> {
        Self::from_sparse(m.ring().clone(), m.cols(), m.sparse_rows())
    }

    /// Column space of `m`, as a submodule of `R^rows`.
    pub fn column_space(m: &Matrix<R>) -> Result<Self> {
        Self::from_sparse(m.ring().clone(), m.rows(), m.sparse_columns())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub(crate) fn sparse_rows(&self) -> &[SparseVec<R::Elem>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<R::Elem>> {
        self.rows
            .iter()
            .map(|r| sparse::to_dense(&self.ring, r, self.cols))
            .collect()
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        Matrix::from_sparse_rows(self.ring.clone(), self.cols, &self.rows)
    }

    fn is_field(&self) -> bool {
        self.ring.structure() == Structure::Field
    }

    fn normalize_lead(&self, v: SparseVec<R::Elem>) -> SparseVec<R::Elem> {
        let u = self.ring.canonical_unit(&v[0].1);
        if self.ring.is_one(&u) {
            v
        } else {
            sparse::scale(&self.ring, &u, &v)
        }
    }

    /// Adds a generator; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: SparseVec<R::Elem>) -> bool {
        let r = self.ring.clone();
        loop {
            let Some((c, b)) = v.first().cloned() else {
                return false;
            };
            let idx = self.pivot_index[c];
            if idx == NO_PIVOT {
                let v = self.normalize_lead(v);
                self.pivot_index[c] = self.rows.len();
                self.rows.push(v);
                self.reduced = false;
                return true;
            }
            let a = self.rows[idx][0].1.clone();
            if self.is_field() {
                let q = r.mul(&b, &r.inverse(&a).expect("pivot is a unit"));
                v = sparse::sub_multiple(&r, &v, &q, &self.rows[idx]);
                continue;
            }
            let (q, rem) = r.div_rem(&b, &a);
            if r.is_zero(&rem) {
                v = sparse::sub_multiple(&r, &v, &q, &self.rows[idx]);
                continue;
            }
            // unimodular 2x2 step: the pivot becomes gcd(a, b)
            let (g, s, t) = xgcd(&r, &a, &b);
            let a_g = r.divide_exact(&a, &g).expect("gcd divides");
            let b_g = r.divide_exact(&b, &g).expect("gcd divides");
            let p = std::mem::take(&mut self.rows[idx]);
            let new_p = sparse::combine(&r, &s, &p, &t, &v);
            v = sparse::combine(&r, &a_g, &v, &r.neg(&b_g), &p);
            self.rows[idx] = self.normalize_lead(new_p);
            self.reduced = false;
        }
    }

    fn sort(&mut self) {
        self.rows.sort_by_key(|r| r[0].0);
        self.pivot_index.iter_mut().for_each(|p| *p = NO_PIVOT);
        for (i, r) in self.rows.iter().enumerate() {
            self.pivot_index[r[0].0] = i;
        }
    }

    /// Brings the basis into reduced form (RREF over fields, HNF over Z).
    pub fn reduce(&mut self) {
        if self.reduced {
            return;
        }
        let r = self.ring.clone();
        let field = self.is_field();
        for i in (0..self.rows.len()).rev() {
            let mut row = std::mem::take(&mut self.rows[i]);
            let mut pos = 1;
            while pos < row.len() {
                let c = row[pos].0;
                let j = self.pivot_index[c];
                if j == NO_PIVOT {
                    pos += 1;
                    continue;
                }
                let q = if field {
                    row[pos].1.clone()
                } else {
                    r.div_rem(&row[pos].1, &self.rows[j][0].1).0
                };
                if r.is_zero(&q) {
                    pos += 1;
                    continue;
                }
                row = sparse::sub_multiple(&r, &row, &q, &self.rows[j]);
                if row.get(pos).is_some_and(|(cc, _)| *cc == c) {
                    pos += 1;
                }
            }
            self.rows[i] = row;
        }
        self.reduced = true;
    }

    pub fn into_reduced(mut self) -> Self {
        self.reduce();
        self
    }

    /// Coefficients of `v` on the basis rows, if `v` lies in the span.
    pub(crate) fn coordinates_sparse(&self, v: &SparseVec<R::Elem>) -> Option<Vec<R::Elem>> {
        let r = &self.ring;
        let mut x = vec![r.zero(); self.rows.len()];
        let mut w = v.clone();
        while let Some((c, b)) = w.first().cloned() {
            let idx = self.pivot_index[c];
            if idx == NO_PIVOT {
                return None;
            }
            let q = r.divide_exact(&b, &self.rows[idx][0].1)?;
            w = sparse::sub_multiple(r, &w, &q, &self.rows[idx]);
            x[idx] = q;
        }
        Some(x)
    }

    pub fn coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        self.coordinates_sparse(&sparse::from_dense(&self.ring, v))
    }

    pub(crate) fn contains_sparse(&self, v: &SparseVec<R::Elem>) -> bool {
        self.coordinates_sparse(v).is_some()
    }

    pub fn contains(&self, v: &[R::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_module(&self, other: &Echelon<R>) -> bool {
        other.rows.iter().all(|v| self.contains_sparse(v))
    }

    pub fn same_module(&self, other: &Echelon<R>) -> bool {
        self.cols == other.cols
            && self.rank() == other.rank()
            && self.contains_module(other)
            && other.contains_module(self)
    }

    /// Vector with the given coordinates on the basis.
    pub(crate) fn combination(&self, x: &[R::Elem]) -> SparseVec<R::Elem> {
        let r = &self.ring;
        let mut out = Vec::new();
        for (c, row) in x.iter().zip(&self.rows) {
            if !r.is_zero(c) {
                out = sparse::combine(r, &r.one(), &out, c, row);
            }
        }
        out
    }

    /// Sum of two submodules of the same ambient module.
    pub fn sum(&self, other: &Echelon<R>) -> Self {
        let mut e = self.clone();
        for v in &other.rows {
            e.insert(v.clone());
        }
        e.sort();
        e
    }
}

/// Basis of `{v : A·v = 0}`.
///
/// Over a field the basis is the canonical one attached to the free columns
/// of the reduced row-echelon form; over the integers it is a lattice basis
/// obtained from the Hermite form of `[Aᵀ | I]`.
pub fn kernel<R: Ring>(a: &Matrix<R>) -> Result<Vec<Vec<R::Elem>>> {
    let r = a.ring().clone();
    require_linear_algebra(&r)?;
    let n = a.cols();
    if r.structure() == Structure::Field {
        let e = Echelon::row_space(a)?.into_reduced();
        let pivots = e.pivots();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..n).filter(|&j| !is_pivot[j]) {
            let mut v = vec![r.zero(); n];
            v[f] = r.one();
            for (row, &p) in e.sparse_rows().iter().zip(&pivots) {
                if let Some(x) = sparse::get(row, f) {
                    v[p] = r.neg(x);
                }
            }
            out.push(v);
        }
        return Ok(out);
    }
    let m = a.rows();
    let rows: Vec<SparseVec<R::Elem>> = a
        .sparse_columns()
        .into_iter()
        .enumerate()
        .map(|(j, mut col)| {
            col.push((m + j, r.one()));
            col
        })
        .collect();
    let e = Echelon::from_sparse(r.clone(), m + n, rows)?.into_reduced();
    Ok(e.sparse_rows()
        .iter()
        .filter(|row| row[0].0 >= m)
        .map(|row| {
            let shifted: SparseVec<R::Elem> = row.iter().map(|(c, x)| (c - m, x.clone())).collect();
            sparse::to_dense(&r, &shifted, n)
        })
        .collect())
}

/// Basis of `{x : x·A = 0}`.
pub fn left_kernel<R: Ring>(a: &Matrix<R>) -> Result<Vec<Vec<R::Elem>>> {
    kernel(&a.transpose())
}

pub fn rank<R: Ring>(a: &Matrix<R>) -> Result<usize> {
    Ok(Echelon::row_space(a)?.rank())
}

/// Reduced row-echelon form and kernel basis of a matrix over a field.
pub fn echelon_and_kernel<R: Ring>(a: &Matrix<R>) -> Result<(Matrix<R>, Vec<Vec<R::Elem>>)> {
    if a.ring().structure() != Structure::Field {
        return Err(Error::UnsupportedRing(format!(
            "{:?} is not a field",
            a.ring().kind()
        )));
    }
    let e = Echelon::row_space(a)?.into_reduced();
    Ok((e.to_matrix(), kernel(a)?))
}
