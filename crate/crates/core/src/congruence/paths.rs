use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An integer 2×2 matrix `[a, b, c, d]` in reading order.
pub type Mat2 = [BigInt; 4];

/// A point of `P¹(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QPoint {
    Infinity,
    Finite(BigRational),
}

impl QPoint {
    pub fn from_ratio(p: i64, q: i64) -> QPoint {
        if q == 0 {
            QPoint::Infinity
        } else {
            QPoint::Finite(BigRational::new(p.into(), q.into()))
        }
    }

    pub fn zero() -> QPoint {
        QPoint::Finite(BigRational::zero())
    }

    /// Number of partial quotients in the continued fraction (0 for `∞`).
    pub fn convergent_count(&self) -> usize {
        match self {
            QPoint::Infinity => 0,
            QPoint::Finite(r) => chain_from_infinity(r).len(),
        }
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QPoint::Infinity => write!(f, "oo"),
            QPoint::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Möbius action of an integer matrix on `P¹(Q)`.
pub fn mat_apply(g: &Mat2, x: &QPoint) -> QPoint {
    let (num, den) = match x {
        QPoint::Infinity => (g[0].clone(), g[2].clone()),
        QPoint::Finite(r) => (
            &g[0] * r.numer() + &g[1] * r.denom(),
            &g[2] * r.numer() + &g[3] * r.denom(),
        ),
    };
    if den.is_zero() {
        QPoint::Infinity
    } else {
        QPoint::Finite(BigRational::new(num, den))
    }
}

/// One term `sign·{g·0, g·∞}` of a decomposed modular symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub g: Mat2,
    pub sign: i8,
}

impl PathStep {
    /// The oriented segment this step stands for.
    pub fn endpoints(&self) -> (QPoint, QPoint) {
        let a = mat_apply(&self.g, &QPoint::zero());
        let b = mat_apply(&self.g, &QPoint::Infinity);
        if self.sign > 0 {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Determinant-one matrices `g_j` with `{g_j·0, g_j·∞}` the consecutive
/// convergent pairs from `∞` to `r`; determinant `−1` is corrected by
/// negating the first column.
fn chain_from_infinity(r: &BigRational) -> Vec<Mat2> {
    let (mut a, mut b) = (r.numer().clone(), r.denom().clone());
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::new();
    loop {
        let (quot, rem) = a.div_mod_floor(&b);
        let p = &quot * &p1 + &p0;
        let q = &quot * &q1 + &q0;
        let det = &p * &q1 - &p1 * &q;
        let g = if det.is_positive() {
            [p.clone(), p1.clone(), q.clone(), q1.clone()]
        } else {
            [-&p, p1.clone(), -&q, q1.clone()]
        };
        out.push(g);
        p0 = std::mem::replace(&mut p1, p);
        q0 = std::mem::replace(&mut q1, q);
        a = std::mem::replace(&mut b, rem);
        if b.is_zero() {
            return out;
        }
    }
}

fn chain_from_zero(x: &QPoint) -> Vec<Mat2> {
    let identity = [1, 0, 0, 1].map(BigInt::from);
    match x {
        QPoint::Infinity => vec![identity],
        QPoint::Finite(r) if r.is_zero() => Vec::new(),
        QPoint::Finite(r) => {
            let mut v = vec![identity];
            v.extend(chain_from_infinity(r));
            v
        }
    }
}

/// Decomposes `{α, β}` as `Σ sign·{g·0, g·∞}` with `g ∈ SL₂(Z)`, via
/// `{α, β} = {0, β} − {0, α}` and the convergents of each endpoint.
/// Consecutive segments share endpoints, from `α` to `β`.
pub fn continued_fraction_path(alpha: &QPoint, beta: &QPoint) -> Vec<PathStep> {
    if alpha == beta {
        return Vec::new();
    }
    let mut out: Vec<PathStep> = chain_from_zero(alpha)
        .into_iter()
        .rev()
        .map(|g| PathStep { g, sign: -1 })
        .collect();
    for g in chain_from_zero(beta) {
        // a shared prefix of both chains cancels
        if out.last().is_some_and(|s| s.g == g) {
            out.pop();
        } else {
            out.push(PathStep { g, sign: 1 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn telescopes(path: &[PathStep], a: &QPoint, b: &QPoint) -> bool {
        if path.is_empty() {
            return a == b;
        }
        let segs: Vec<(QPoint, QPoint)> = path.iter().map(|s| s.endpoints()).collect();
        segs[0].0 == *a
            && segs.last().unwrap().1 == *b
            && segs.windows(2).all(|w| w[0].1 == w[1].0)
            && path.iter().all(|s| (&s.g[0] * &s.g[3] - &s.g[1] * &s.g[2]).is_one())
    }

    #[test]
    fn basic_paths() {
        let id = [1, 0, 0, 1].map(BigInt::from);
        let zero = QPoint::zero();
        let inf = QPoint::Infinity;
        assert_eq!(continued_fraction_path(&zero, &inf), vec![PathStep { g: id.clone(), sign: 1 }]);
        assert_eq!(continued_fraction_path(&inf, &zero), vec![PathStep { g: id, sign: -1 }]);
        let half = QPoint::from_ratio(1, 2);
        let p = continued_fraction_path(&zero, &half);
        assert!(telescopes(&p, &zero, &half));
        assert!(continued_fraction_path(&half, &half).is_empty());
    }

    proptest! {
        #[test]
        fn random_paths_telescope(
            a in -10_000i64..10_000, b in 0i64..10_000,
            c in -10_000i64..10_000, d in 0i64..10_000,
        ) {
            let x = QPoint::from_ratio(a, b);
            let y = QPoint::from_ratio(c, d);
            let p = continued_fraction_path(&x, &y);
            prop_assert!(telescopes(&p, &x, &y));
            prop_assert!(p.len() <= 2 + x.convergent_count() + y.convergent_count());
        }
    }
}
