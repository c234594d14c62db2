use std::fmt;

use num_bigint::BigInt;

use super::sparse::{self, SparseVec};
use crate::error::{shape, Result};
use crate::ring::Ring;

/// Dense matrix with exact entries, stored row-major.
///
/// As a linear map it acts on column vectors: `v ↦ A·v`.
#[derive(Clone)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Eq for Matrix<R> {}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.render(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn scalar(ring: R, n: usize, c: &R::Elem) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(ring: R, cols: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(shape(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        let n = rows.len();
        Ok(Matrix {
            ring,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        Self::from_rows(ring, cols, data)
    }

    pub fn from_integer_rows(ring: R, rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|x| ring.from_integer(x)).collect())
            .collect();
        Self::from_rows(ring, cols, data)
    }

    pub(crate) fn from_sparse_rows(ring: R, cols: usize, rows: &[SparseVec<R::Elem>]) -> Self {
        let mut m = Self::zero(ring, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<R::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub(crate) fn sparse_rows(&self) -> Vec<SparseVec<R::Elem>> {
        (0..self.rows)
            .map(|i| sparse::from_dense(&self.ring, self.row(i)))
            .collect()
    }

    pub(crate) fn sparse_columns(&self) -> Vec<SparseVec<R::Elem>> {
        let mut cols = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if !self.ring.is_zero(x) {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(shape(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Self::new(self.ring.clone(), self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Self::new(self.ring.clone(), self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(c, a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let other_rows = other.sparse_rows();
        let mut out = Self::zero(r.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if r.is_zero(a) {
                    continue;
                }
                for (j, b) in &other_rows[k] {
                    dst[*j] = r.add(&dst[*j], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.cols {
            return Err(shape(format!(
                "vector of length {} for a {}-column matrix",
                v.len(),
                self.cols
            )));
        }
        let r = &self.ring;
        let nz: Vec<(usize, &R::Elem)> = v.iter().enumerate().filter(|(_, x)| !r.is_zero(x)).collect();
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                nz.iter().fold(r.zero(), |acc, (j, x)| {
                    if r.is_zero(&row[*j]) {
                        acc
                    } else {
                        r.add(&acc, &r.mul(&row[*j], x))
                    }
                })
            })
            .collect())
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(shape("power of a non-square matrix"));
        }
        let mut acc = Self::identity(self.ring.clone(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.ring.clone(), self.rows)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| shape("empty stack"))?;
        if parts.iter().any(|m| m.cols != first.cols) {
            return Err(shape("vertical stack of matrices with different widths"));
        }
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Self::new(
            first.ring.clone(),
            parts.iter().map(|m| m.rows).sum(),
            first.cols,
            data,
        )
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let t: Vec<Self> = parts.iter().map(|m| m.transpose()).collect();
        Ok(Self::vstack(&t.iter().collect::<Vec<_>>())?.transpose())
    }

    pub fn block_diagonal(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| shape("empty block list"))?;
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zero(first.ring.clone(), rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(r0 + i) * cols + c0 + j] = m.get(i, j).clone();
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.ring.render(x)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;

    #[test]
    fn multiplication_and_shapes() {
        let a = Matrix::from_i64_rows(Integers, &[&[1, 2], &[3, 4]]).unwrap();
        let b = Matrix::from_i64_rows(Integers, &[&[0, 1], &[1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Matrix::from_i64_rows(Integers, &[&[2, 1], &[4, 3]]).unwrap());
        let c = Matrix::from_i64_rows(Integers, &[&[1, 2, 3]]).unwrap();
        assert!(matches!(a.mul(&c), Err(crate::Error::Shape(_))));
        assert!(Matrix::new(Integers, 2, 2, vec![]).is_err());
    }

    #[test]
    fn stacking() {
        let a = Matrix::from_i64_rows(Integers, &[&[1, 2]]).unwrap();
        let b = Matrix::from_i64_rows(Integers, &[&[3, 4]]).unwrap();
        let v = Matrix::vstack(&[&a, &b]).unwrap();
        assert_eq!(v.rows(), 2);
        let h = Matrix::hstack(&[&a, &b]).unwrap();
        assert_eq!(h.row(0).len(), 4);
        let d = Matrix::block_diagonal(&[&a, &b]).unwrap();
        assert_eq!((d.rows(), d.cols()), (2, 4));
    }
}
