use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, Result};
use crate::linalg::{charpoly, kernel, Echelon, Matrix};
use crate::poly::{factor_fp, factor_q};
use crate::ring::{PrimeField, Ring, RingKind};

/// Which operator a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKey {
    Hecke(u64),
    Diamond(u64),
}

impl fmt::Display for OpKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKey::Hecke(p) => write!(f, "T{p}"),
            OpKey::Diamond(d) => write!(f, "<{d}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceKind<E> {
    /// Every operator acts as a scalar.
    Eigenform {
        eigenvalues: Vec<(OpKey, E)>,
        /// `a_1, …, a_B`.
        coefficients: Vec<E>,
    },
    /// Rational eigenvalues but some operator is not semisimple here.
    NonDiagonalizable { charpolys: Vec<(OpKey, Vec<E>)> },
    /// An irreducible factor of degree above one: the eigenvalues live in
    /// an extension of the base field.
    Irrational { key: OpKey, factor: Vec<E>, multiplicity: usize },
    /// The base field has no factorization routine.
    Unsplit { key: OpKey, charpoly: Vec<E> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPiece<E> {
    pub dim: usize,
    pub kind: PieceKind<E>,
}

impl<E> fmt::Display for PieceKind<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceKind::Eigenform { .. } => write!(f, "eigenform"),
            PieceKind::NonDiagonalizable { .. } => write!(f, "non-diagonalizable over base field"),
            PieceKind::Irrational { .. } => write!(f, "eigenvalues outside the base field"),
            PieceKind::Unsplit { .. } => write!(f, "not factored"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigensystemReport<E> {
    /// Characteristic polynomial of every operator on the whole space.
    pub charpolys: Vec<(OpKey, Vec<E>)>,
    /// Monic irreducible factors with multiplicities, when available.
    pub factorizations: Vec<(OpKey, Option<Vec<(Vec<E>, usize)>>)>,
    pub pieces: Vec<EigenPiece<E>>,
}

/// Factors `f` over the base field (`Q` and `F_p` only).
pub fn factor_in<R: Ring>(r: &R, f: &[R::Elem]) -> Option<Vec<(Vec<R::Elem>, usize)>> {
    match r.kind() {
        RingKind::Rationals => {
            let qs: Option<Vec<BigRational>> = f.iter().map(|x| r.to_rational(x)).collect();
            let fac = factor_q(&qs?);
            let back = |c: &BigRational| {
                let num = r.from_integer(c.numer());
                let den = r.inverse(&r.from_integer(c.denom()))?;
                Some(r.mul(&num, &den))
            };
            fac.factors
                .iter()
                .map(|(g, m)| Some((g.iter().map(back).collect::<Option<Vec<_>>>()?, *m)))
                .collect()
        }
        RingKind::PrimeField(p) => {
            let field = PrimeField::new(p).ok()?;
            let us: Option<Vec<u64>> = f
                .iter()
                .map(|x| r.lift_integer(x).and_then(|b| u64::try_from(b).ok()))
                .collect();
            let fac = factor_fp(&field, &us?);
            Some(
                fac.factors
                    .iter()
                    .map(|(g, m)| (g.iter().map(|&c| r.from_integer(&BigInt::from(c))).collect(), *m))
                    .collect(),
            )
        }
        _ => None,
    }
}

fn poly_at_matrix<R: Ring>(f: &[R::Elem], b: &Matrix<R>) -> Result<Matrix<R>> {
    let n = b.rows();
    let r = b.ring().clone();
    let mut acc = Matrix::zero(r.clone(), n, n);
    for c in f.iter().rev() {
        acc = acc.mul(b)?.add(&Matrix::scalar(r.clone(), n, c))?;
    }
    Ok(acc)
}

fn poly_pow<R: Ring>(r: &R, f: &[R::Elem], e: usize) -> Vec<R::Elem> {
    (0..e).fold(vec![r.one()], |acc, _| crate::poly::mul(r, &acc, f))
}

/// A subspace (rows in ambient coordinates) with the operator data found
/// so far.
struct Open<R: Ring> {
    basis: Echelon<R>,
    eigenvalues: Vec<(OpKey, R::Elem)>,
}

fn restrict<R: Ring>(a: &Matrix<R>, w: &Echelon<R>) -> Result<Matrix<R>> {
    let basis = w.basis();
    let dim = basis.len();
    let mut b = Matrix::zero(a.ring().clone(), dim, dim);
    for (j, v) in basis.iter().enumerate() {
        let img = a.mul_vec(v)?;
        let c = w
            .coordinates(&img)
            .ok_or_else(|| domain("operators do not commute: subspace not stable"))?;
        for (i, x) in c.into_iter().enumerate() {
            b.set(i, j, x);
        }
    }
    Ok(b)
}

fn embed<R: Ring>(w: &Echelon<R>, coords: &[Vec<R::Elem>]) -> Result<Echelon<R>> {
    let r = w.ring();
    let basis = w.basis();
    let rows: Vec<Vec<R::Elem>> = coords
        .iter()
        .map(|c| {
            let mut v = vec![r.zero(); w.cols()];
            for (x, b) in c.iter().zip(&basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = r.add(vi, &r.mul(x, bi));
                }
            }
            v
        })
        .collect();
    Ok(Echelon::from_rows(r.clone(), w.cols(), &rows)?.into_reduced())
}

/// Simultaneous decomposition of commuting operators over a field, with
/// `a_n` for `n ≤ bound` on the eigenform pieces.
///
/// `a_p` comes from the Hecke operators; the recurrence uses the eigenvalue
/// of `⟨p⟩` when a diamond operator is supplied (`1` otherwise) and treats
/// `p | level` as `a_{p^r} = a_p^r`.
pub fn eigensystem<R: Ring>(
    ops: &[(OpKey, Matrix<R>)],
    weight: u64,
    level: u64,
    bound: u64,
) -> Result<EigensystemReport<R::Elem>> {
    let Some((_, first)) = ops.first() else {
        return Err(domain("no operators given"));
    };
    let r = first.ring().clone();
    if !r.is_field() {
        return Err(domain("eigensystems need a field"));
    }
    let g = first.rows();
    let mut charpolys = Vec::new();
    let mut factorizations = Vec::new();
    for (k, a) in ops {
        let cp = charpoly(a)?;
        factorizations.push((*k, factor_in(&r, &cp)));
        charpolys.push((*k, cp));
    }

    let whole = Echelon::from_rows(r.clone(), g, &Matrix::identity(r.clone(), g).row_vectors())?.into_reduced();
    let mut open = vec![Open { basis: whole, eigenvalues: Vec::new() }];
    let mut pieces = Vec::new();
    if g == 0 {
        open.clear();
    }
    for (key, a) in ops {
        let mut next = Vec::new();
        for piece in open {
            let b = restrict(a, &piece.basis)?;
            let cp = charpoly(&b)?;
            let Some(fac) = factor_in(&r, &cp) else {
                pieces.push(EigenPiece {
                    dim: piece.basis.rank(),
                    kind: PieceKind::Unsplit { key: *key, charpoly: cp },
                });
                continue;
            };
            for (f, m) in fac {
                let gen = kernel(&poly_at_matrix(&poly_pow(&r, &f, m), &b)?)?;
                let sub = embed(&piece.basis, &gen)?;
                if f.len() == 2 {
                    let lambda = r.neg(&f[0]);
                    let mut ev = piece.eigenvalues.clone();
                    ev.push((*key, lambda));
                    next.push(Open { basis: sub, eigenvalues: ev });
                } else {
                    pieces.push(EigenPiece {
                        dim: sub.rank(),
                        kind: PieceKind::Irrational { key: *key, factor: f, multiplicity: m },
                    });
                }
            }
        }
        open = next;
    }
    for piece in open {
        let mut scalar = true;
        let mut cps = Vec::new();
        for (key, a) in ops {
            let b = restrict(a, &piece.basis)?;
            let lambda = &piece.eigenvalues.iter().find(|e| e.0 == *key).expect("recorded").1;
            scalar &= b == Matrix::scalar(r.clone(), b.rows(), lambda);
            cps.push((*key, charpoly(&b)?));
        }
        let kind = if scalar {
            PieceKind::Eigenform {
                coefficients: q_coefficients(&r, &piece.eigenvalues, weight, level, bound),
                eigenvalues: piece.eigenvalues,
            }
        } else {
            PieceKind::NonDiagonalizable { charpolys: cps }
        };
        pieces.push(EigenPiece { dim: piece.basis.rank(), kind });
    }
    Ok(EigensystemReport {
        charpolys,
        factorizations,
        pieces,
    })
}

/// `a_1, …, a_B` from the `a_p` by multiplicativity and the prime-power
/// recurrence; entries whose `a_p` is unknown are left as zero.
pub fn q_coefficients<R: Ring>(
    r: &R,
    eigenvalues: &[(OpKey, R::Elem)],
    weight: u64,
    level: u64,
    bound: u64,
) -> Vec<R::Elem> {
    let find = |k: OpKey| eigenvalues.iter().find(|e| e.0 == k).map(|e| e.1.clone());
    let prime_power = |p: u64, e: u32| -> R::Elem {
        let Some(ap) = find(OpKey::Hecke(p)) else {
            return r.zero();
        };
        if level.is_multiple_of(p) {
            return r.pow(&ap, e as u64);
        }
        let chi = find(OpKey::Diamond(p % level.max(1))).unwrap_or_else(|| r.one());
        let pk = r.mul(&chi, &r.pow(&r.from_i64(p as i64), weight - 1));
        let (mut prev, mut cur) = (r.one(), ap.clone());
        for _ in 1..e {
            let nxt = r.sub(&r.mul(&ap, &cur), &r.mul(&pk, &prev));
            prev = std::mem::replace(&mut cur, nxt);
        }
        if e == 0 {
            r.one()
        } else {
            cur
        }
    };
    (1..=bound)
        .map(|n| {
            let mut m = n;
            let mut acc = r.one();
            let mut p = 2;
            while m > 1 {
                if p * p > m {
                    p = m;
                }
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                if e > 0 {
                    acc = r.mul(&acc, &prime_power(p, e));
                }
                p += 1;
            }
            acc
        })
        .collect()
}
