use super::echelon::{kernel, Echelon};
use super::smith::smith_data;
use super::sparse::{self, SparseVec};
use super::Matrix;
use crate::error::{internal, shape, Error, Result};
use crate::ring::{Ring, Structure};

#[derive(Clone, Debug)]
enum Normal<R: Ring> {
    /// Relations in reduced row-echelon form; the non-pivot coordinates
    /// are the generators.
    Field { free: Vec<usize> },
    /// `x ↦ x·W` diagonalizes the relations to `diag`; generators are the
    /// coordinates whose invariant factor is not a unit.
    Smith {
        diag: Vec<R::Elem>,
        w: Vec<Vec<R::Elem>>,
        w_inv: Vec<Vec<R::Elem>>,
        gens: Vec<usize>,
    },
}

/// A finitely presented module `S / L` with `L ⊆ S ⊆ R^outer`.
///
/// `S` defaults to the whole ambient module, which gives the ordinary
/// presentation `R^n / (relations)`. Vectors are always given in ambient
/// ("outer") coordinates; classes are reported in coordinates on the
/// normalized generators.
#[derive(Clone, Debug)]
pub struct QuotientModule<R: Ring> {
    ring: R,
    outer_rank: usize,
    sub: Option<Echelon<R>>,
    relations: Echelon<R>,
    normal: Normal<R>,
}

impl<R: Ring> QuotientModule<R> {
    /// `R^ambient_rank / span(relation_rows)`.
    pub fn presentation(ring: R, ambient_rank: usize, relation_rows: &[Vec<R::Elem>]) -> Result<Self> {
        if let Some(bad) = relation_rows.iter().find(|r| r.len() != ambient_rank) {
            return Err(shape(format!(
                "relation of length {} for ambient rank {ambient_rank}",
                bad.len()
            )));
        }
        let rel = relation_rows.iter().map(|v| sparse::from_dense(&ring, v)).collect();
        Self::from_parts(ring, ambient_rank, None, rel)
    }

    /// `S / L` where `S` is generated by `sub_generators` together with the
    /// relations and `L` by the relations.
    pub fn subquotient(
        ring: R,
        outer_rank: usize,
        sub_generators: &[Vec<R::Elem>],
        relations: &[Vec<R::Elem>],
    ) -> Result<Self> {
        if let Some(bad) = sub_generators.iter().chain(relations).find(|r| r.len() != outer_rank) {
            return Err(shape(format!(
                "vector of length {} in ambient rank {outer_rank}",
                bad.len()
            )));
        }
        let sub: Vec<SparseVec<R::Elem>> = sub_generators
            .iter()
            .map(|v| sparse::from_dense(&ring, v))
            .collect();
        let rel: Vec<SparseVec<R::Elem>> = relations.iter().map(|v| sparse::from_dense(&ring, v)).collect();
        Self::from_sparse_parts(ring, outer_rank, sub, rel)
    }

    pub(crate) fn from_sparse_parts(
        ring: R,
        outer_rank: usize,
        sub: Vec<SparseVec<R::Elem>>,
        rel: Vec<SparseVec<R::Elem>>,
    ) -> Result<Self> {
        let all: Vec<SparseVec<R::Elem>> = sub.into_iter().chain(rel.iter().cloned()).collect();
        let sub = Echelon::from_sparse(ring.clone(), outer_rank, all)?;
        Self::from_parts(ring, outer_rank, Some(sub), rel)
    }

    pub(crate) fn from_parts(
        ring: R,
        outer_rank: usize,
        sub: Option<Echelon<R>>,
        rel_outer: Vec<SparseVec<R::Elem>>,
    ) -> Result<Self> {
        // the whole ambient module needs no coordinate change
        let sub = sub.filter(|s| !(s.rank() == outer_rank && is_standard(s)));
        let s_rank = sub.as_ref().map_or(outer_rank, |s| s.rank());
        let mut rel_coords = Vec::with_capacity(rel_outer.len());
        for v in rel_outer {
            let x = match &sub {
                None => v,
                Some(s) => {
                    let c = s
                        .coordinates_sparse(&v)
                        .ok_or_else(|| internal("relation outside the submodule"))?;
                    sparse::from_dense(&ring, &c)
                }
            };
            rel_coords.push(x);
        }
        let mut relations = Echelon::from_sparse(ring.clone(), s_rank, rel_coords)?;
        let normal = match ring.structure() {
            Structure::Field => {
                relations.reduce();
                let mut is_pivot = vec![false; s_rank];
                for p in relations.pivots() {
                    is_pivot[p] = true;
                }
                Normal::Field {
                    free: (0..s_rank).filter(|&i| !is_pivot[i]).collect(),
                }
            }
            Structure::Euclidean => {
                let dense = relations.basis();
                let data = smith_data(&ring, dense, s_rank, false);
                let gens = (0..s_rank)
                    .filter(|&i| i >= data.diag.len() || !ring.is_unit(&data.diag[i]))
                    .collect();
                Normal::Smith {
                    diag: data.diag,
                    w: data.w,
                    w_inv: data.w_inv,
                    gens,
                }
            }
            Structure::Other => {
                return Err(Error::UnsupportedRing(format!(
                    "no effective linear algebra over {:?}",
                    ring.kind()
                )))
            }
        };
        Ok(QuotientModule {
            ring,
            outer_rank,
            sub,
            relations,
            normal,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn outer_rank(&self) -> usize {
        self.outer_rank
    }

    /// Rank of the submodule `S`.
    pub fn sub_rank(&self) -> usize {
        self.sub.as_ref().map_or(self.outer_rank, |s| s.rank())
    }

    /// Rank of the relation module `L`.
    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Free rank (the dimension over a field).
    pub fn rank(&self) -> usize {
        self.sub_rank() - self.relations.rank()
    }

    /// Invariant factors `> 1` (integers only; empty over fields).
    pub fn torsion_invariants(&self) -> Vec<R::Elem> {
        match &self.normal {
            Normal::Field { .. } => Vec::new(),
            Normal::Smith { diag, .. } => diag.iter().filter(|d| !self.ring.is_unit(d)).cloned().collect(),
        }
    }

    pub fn num_generators(&self) -> usize {
        match &self.normal {
            Normal::Field { free } => free.len(),
            Normal::Smith { gens, .. } => gens.len(),
        }
    }

    /// Order ideal generator of each normalized generator (0 for free ones).
    pub fn generator_orders(&self) -> Vec<R::Elem> {
        match &self.normal {
            Normal::Field { free } => vec![self.ring.zero(); free.len()],
            Normal::Smith { diag, gens, .. } => gens
                .iter()
                .map(|&g| diag.get(g).cloned().unwrap_or_else(|| self.ring.zero()))
                .collect(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.num_generators() == 0
    }

    fn sub_coordinates(&self, v: &SparseVec<R::Elem>) -> Option<Vec<R::Elem>> {
        match &self.sub {
            None => Some(sparse::to_dense(&self.ring, v, self.outer_rank)),
            Some(s) => s.coordinates_sparse(v),
        }
    }

    fn class_of(&self, mut x: Vec<R::Elem>) -> Vec<R::Elem> {
        let r = &self.ring;
        match &self.normal {
            Normal::Field { free } => {
                for row in self.relations.sparse_rows() {
                    let p = row[0].0;
                    if r.is_zero(&x[p]) {
                        continue;
                    }
                    let c = x[p].clone();
                    for (j, y) in row {
                        x[*j] = r.sub(&x[*j], &r.mul(&c, y));
                    }
                }
                free.iter().map(|&i| x[i].clone()).collect()
            }
            Normal::Smith { diag, w, gens, .. } => gens
                .iter()
                .map(|&g| {
                    let y = x.iter().zip(w).fold(r.zero(), |acc, (xi, wrow)| {
                        if r.is_zero(xi) || r.is_zero(&wrow[g]) {
                            acc
                        } else {
                            r.add(&acc, &r.mul(xi, &wrow[g]))
                        }
                    });
                    match diag.get(g) {
                        Some(d) => r.div_rem(&y, d).1,
                        None => y,
                    }
                })
                .collect(),
        }
    }

    pub(crate) fn coordinates_sparse(&self, v: &SparseVec<R::Elem>) -> Option<Vec<R::Elem>> {
        self.sub_coordinates(v).map(|x| self.class_of(x))
    }

    /// Coordinates of the class of `v` on the normalized generators, or
    /// `None` when `v` is not in the submodule `S`.
    pub fn coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        self.coordinates_sparse(&sparse::from_dense(&self.ring, v))
    }

    /// Whether `v` lies in `S`.
    pub fn contains(&self, v: &[R::Elem]) -> bool {
        self.sub_coordinates(&sparse::from_dense(&self.ring, v)).is_some()
    }

    /// Whether `v` lies in the relation module `L`.
    pub fn is_zero_class(&self, v: &[R::Elem]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| self.ring.is_zero(x)))
    }

    fn sub_to_outer(&self, x: &[R::Elem]) -> SparseVec<R::Elem> {
        match &self.sub {
            None => sparse::from_dense(&self.ring, x),
            Some(s) => s.combination(x),
        }
    }

    pub(crate) fn generator_sparse(&self, i: usize) -> SparseVec<R::Elem> {
        let r = &self.ring;
        let s = self.sub_rank();
        let x = match &self.normal {
            Normal::Field { free } => {
                let mut e = vec![r.zero(); s];
                e[free[i]] = r.one();
                e
            }
            Normal::Smith { w_inv, gens, .. } => w_inv[gens[i]].clone(),
        };
        self.sub_to_outer(&x)
    }

    /// Ambient vector representing the `i`-th normalized generator.
    pub fn generator_outer(&self, i: usize) -> Vec<R::Elem> {
        sparse::to_dense(&self.ring, &self.generator_sparse(i), self.outer_rank)
    }

    /// Ambient representative of the class with the given coordinates.
    pub fn class_to_outer(&self, coords: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            if !r.is_zero(c) {
                out = sparse::combine(r, &r.one(), &out, c, &self.generator_sparse(i));
            }
        }
        sparse::to_dense(r, &out, self.outer_rank)
    }

    pub(crate) fn relations_sparse(&self) -> Vec<SparseVec<R::Elem>> {
        self.relations
            .sparse_rows()
            .iter()
            .map(|x| self.sub_to_outer(&sparse::to_dense(&self.ring, x, self.sub_rank())))
            .collect()
    }

    pub(crate) fn sub_sparse(&self) -> Vec<SparseVec<R::Elem>> {
        match &self.sub {
            None => (0..self.outer_rank).map(|i| vec![(i, self.ring.one())]).collect(),
            Some(s) => s.sparse_rows().to_vec(),
        }
    }

    /// Basis of the relation module in ambient coordinates.
    pub fn relation_basis(&self) -> Vec<Vec<R::Elem>> {
        self.relations_sparse()
            .iter()
            .map(|v| sparse::to_dense(&self.ring, v, self.outer_rank))
            .collect()
    }

    /// Basis of `S` in ambient coordinates.
    pub fn sub_basis(&self) -> Vec<Vec<R::Elem>> {
        self.sub_sparse()
            .iter()
            .map(|v| sparse::to_dense(&self.ring, v, self.outer_rank))
            .collect()
    }

    fn echelon_of(&self, rows: Vec<SparseVec<R::Elem>>) -> Result<Echelon<R>> {
        Echelon::from_sparse(self.ring.clone(), self.outer_rank, rows)
    }

    /// Whether both modules are the same subquotient of the same ambient
    /// module (equal `S` and equal `L`).
    pub fn same_subquotient(&self, other: &Self) -> Result<bool> {
        if self.outer_rank != other.outer_rank {
            return Ok(false);
        }
        let s1 = self.echelon_of(self.sub_sparse())?;
        let s2 = other.echelon_of(other.sub_sparse())?;
        let l1 = self.echelon_of(self.relations_sparse())?;
        let l2 = other.echelon_of(other.relations_sparse())?;
        Ok(s1.same_module(&s2) && l1.same_module(&l2))
    }
}

fn is_standard<R: Ring>(s: &Echelon<R>) -> bool {
    let r = s.ring();
    s.sparse_rows()
        .iter()
        .all(|row| row.len() == 1 && r.is_one(&row[0].1))
}

/// A module map between presentations together with its kernel and image.
#[derive(Clone, Debug)]
pub struct InducedMap<R: Ring> {
    /// Matrix on normalized generators (columns = images of source generators).
    pub matrix: Matrix<R>,
    pub kernel: QuotientModule<R>,
    pub image: QuotientModule<R>,
}

fn apply<R: Ring>(r: &R, cols: &[SparseVec<R::Elem>], v: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    let mut out = Vec::new();
    for (j, x) in v {
        out = sparse::combine(r, &r.one(), &out, x, &cols[*j]);
    }
    out
}

/// The map `q1 → q2` induced by the ambient map `v ↦ a·v`.
///
/// Fails with [`Error::IllDefinedMap`] when `a` does not send `S1` into `S2`
/// or `L1` into `L2`.
pub fn induced_map<R: Ring>(
    q1: &QuotientModule<R>,
    q2: &QuotientModule<R>,
    a: &Matrix<R>,
) -> Result<InducedMap<R>> {
    let r = q1.ring.clone();
    if a.cols() != q1.outer_rank || a.rows() != q2.outer_rank {
        return Err(shape(format!(
            "ambient map {}x{} between ranks {} and {}",
            a.rows(),
            a.cols(),
            q1.outer_rank,
            q2.outer_rank
        )));
    }
    let cols = a.sparse_columns();
    for b in q1.sub_sparse() {
        if q2.sub_coordinates(&apply(&r, &cols, &b)).is_none() {
            return Err(Error::IllDefinedMap("source submodule not mapped into target".into()));
        }
    }
    let rel1 = q1.relations_sparse();
    for l in &rel1 {
        let c = q2.coordinates_sparse(&apply(&r, &cols, l)).expect("checked above");
        if c.iter().any(|x| !r.is_zero(x)) {
            return Err(Error::IllDefinedMap("relations not mapped into relations".into()));
        }
    }
    let g1 = q1.num_generators();
    let g2 = q2.num_generators();
    let images: Vec<SparseVec<R::Elem>> = (0..g1)
        .map(|j| apply(&r, &cols, &q1.generator_sparse(j)))
        .collect();
    let mut matrix = Matrix::zero(r.clone(), g2, g1);
    for (j, img) in images.iter().enumerate() {
        let c = q2.coordinates_sparse(img).expect("checked above");
        for (i, x) in c.into_iter().enumerate() {
            matrix.set(i, j, x);
        }
    }

    // kernel: generator combinations mapping to zero classes
    let orders = q2.generator_orders();
    let torsion: Vec<(usize, &R::Elem)> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !r.is_zero(d))
        .collect();
    let ker_coords = if torsion.is_empty() {
        kernel(&matrix)?
    } else {
        let mut ext = Matrix::zero(r.clone(), g2, g1 + torsion.len());
        for i in 0..g2 {
            for j in 0..g1 {
                ext.set(i, j, matrix.get(i, j).clone());
            }
        }
        for (k, (i, d)) in torsion.iter().enumerate() {
            ext.set(*i, g1 + k, (*d).clone());
        }
        kernel(&ext)?.into_iter().map(|mut v| {
            v.truncate(g1);
            v
        }).collect()
    };
    let lifts: Vec<SparseVec<R::Elem>> = ker_coords
        .iter()
        .map(|x| sparse::from_dense(&r, &q1.class_to_outer(x)))
        .collect();
    let kernel = QuotientModule::from_sparse_parts(r.clone(), q1.outer_rank, lifts, rel1)?;

    let rel2 = q2.relations_sparse();
    let image = QuotientModule::from_sparse_parts(r, q2.outer_rank, images, rel2)?;
    Ok(InducedMap { matrix, kernel, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_of_order_two() {
        let q = QuotientModule::presentation(Integers, 1, &[z(&[2])]).unwrap();
        assert_eq!(q.rank(), 0);
        assert_eq!(q.torsion_invariants(), z(&[2]));
    }

    #[test]
    fn rational_quotient() {
        let one = num_rational::BigRational::from_integer(1.into());
        let zero = num_rational::BigRational::from_integer(0.into());
        let q = QuotientModule::presentation(Rationals, 2, &[vec![one, zero]]).unwrap();
        assert_eq!(q.rank(), 1);
        assert!(q.torsion_invariants().is_empty());
    }

    #[test]
    fn chinese_remainder() {
        let q = QuotientModule::presentation(Integers, 2, &[z(&[2, 0]), z(&[0, 3])]).unwrap();
        assert_eq!(q.rank(), 0);
        assert_eq!(q.torsion_invariants(), z(&[6]));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            QuotientModule::presentation(Integers, 2, &[z(&[1])]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn identity_map_has_zero_kernel() {
        let q = QuotientModule::presentation(Integers, 2, &[z(&[2, 4])]).unwrap();
        let m = induced_map(&q, &q, &Matrix::identity(Integers, 2)).unwrap();
        assert!(m.matrix.is_identity());
        assert_eq!(m.kernel.num_generators(), 0);
    }

    #[test]
    fn multiplication_by_three_mod_two() {
        let q = QuotientModule::presentation(Integers, 1, &[z(&[2])]).unwrap();
        let a = Matrix::from_i64_rows(Integers, &[&[3]]).unwrap();
        let m = induced_map(&q, &q, &a).unwrap();
        assert_eq!(m.matrix, Matrix::from_i64_rows(Integers, &[&[1]]).unwrap());
        assert!(m.kernel.is_zero_module());
    }

    #[test]
    fn sum_map_kernel() {
        let q2 = QuotientModule::presentation(Rationals, 2, &[]).unwrap();
        let q1 = QuotientModule::presentation(Rationals, 1, &[]).unwrap();
        let a = Matrix::from_i64_rows(Rationals, &[&[1, 1]]).unwrap();
        let m = induced_map(&q2, &q1, &a).unwrap();
        assert_eq!(m.kernel.rank(), 1);
        assert_eq!(m.image.rank(), 1);
    }

    #[test]
    fn ill_defined_map_is_detected() {
        // Z/2 -> Z/3 by identity does not preserve relations
        let q1 = QuotientModule::presentation(Integers, 1, &[z(&[2])]).unwrap();
        let q2 = QuotientModule::presentation(Integers, 1, &[z(&[3])]).unwrap();
        let a = Matrix::identity(Integers, 1);
        assert!(matches!(induced_map(&q1, &q2, &a), Err(Error::IllDefinedMap(_))));
    }

    #[test]
    fn torsion_kernel() {
        // Z/4 -> Z/4 by multiplication by 2: kernel and image are Z/2
        let q = QuotientModule::presentation(Integers, 1, &[z(&[4])]).unwrap();
        let a = Matrix::from_i64_rows(Integers, &[&[2]]).unwrap();
        let m = induced_map(&q, &q, &a).unwrap();
        assert_eq!(m.kernel.torsion_invariants(), z(&[2]));
        assert_eq!(m.image.torsion_invariants(), z(&[2]));
    }

    #[test]
    fn subquotient_coordinates() {
        // S = span{(1,1,0),(0,0,1)}, L = span{(2,2,0)}: S/L = Z/2 + Z
        let q = QuotientModule::subquotient(
            Integers,
            3,
            &[z(&[1, 1, 0]), z(&[0, 0, 1])],
            &[z(&[2, 2, 0])],
        )
        .unwrap();
        assert_eq!(q.rank(), 1);
        assert_eq!(q.torsion_invariants(), z(&[2]));
        assert!(q.coordinates(&z(&[1, 0, 0])).is_none());
        assert!(q.is_zero_class(&z(&[4, 4, 0])));
        assert!(!q.is_zero_class(&z(&[1, 1, 0])));
        for i in 0..q.num_generators() {
            let g = q.generator_outer(i);
            let mut e = vec![BigInt::from(0); q.num_generators()];
            e[i] = BigInt::from(1);
            assert_eq!(q.coordinates(&g).unwrap(), e);
        }
    }

    proptest! {
        #[test]
        fn reduction_mod_p_preserves_rank_away_from_torsion(
            rows in 1usize..5, cols in 1usize..5,
            entries in proptest::collection::vec(-6i64..=6, 16),
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11])
        ) {
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
                .collect();
            let qz = QuotientModule::presentation(
                Integers, cols, &m.iter().map(|r| z(r)).collect::<Vec<_>>()).unwrap();
            let fp = PrimeField::new(p).unwrap();
            let qp = QuotientModule::presentation(
                fp, cols, &m.iter().map(|r| r.iter().map(|&x| fp.elem(x)).collect()).collect::<Vec<_>>()).unwrap();
            let divides = qz.torsion_invariants().iter().any(|d| (d % BigInt::from(p)) == BigInt::from(0));
            if !divides {
                prop_assert_eq!(qz.rank(), qp.rank());
            } else {
                prop_assert!(qp.rank() > qz.rank());
            }
        }
    }
}
