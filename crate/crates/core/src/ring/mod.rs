//! Exact coefficient rings.
//!
//! Every computation in the crate is generic over [`Ring`]. Elements are
//! plain values in a canonical representation, so `==` is mathematical
//! equality. Supported rings: the integers, the rationals, prime fields and
//! monic quotient extensions of Z or Q (see [`Extension`]).

mod extension;

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

pub use extension::{Extension, ExtensionBase};

/// Algebraic structure a ring offers to the linear algebra layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Field,
    /// Euclidean domain with an effective division with remainder.
    Euclidean,
    /// No effective linear algebra (e.g. `Z[x]/(m)`).
    Other,
}

/// Descriptor of a supported ring, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    Extension { base: ExtensionBase, modulus: Vec<BigRational> },
}

pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn kind(&self) -> RingKind;
    fn structure(&self) -> Structure;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, n: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Inverse of a unit, `None` otherwise.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Division with remainder. Defined for fields and Euclidean domains;
    /// `b` must be nonzero. For the integers the remainder is in `[0, |b|)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Compares Euclidean sizes; used for pivot selection.
    fn cmp_size(&self, _a: &Self::Elem, _b: &Self::Elem) -> Ordering {
        Ordering::Equal
    }

    /// A unit `u` such that `u * a` is the canonical associate of `a`
    /// (positive for the integers, one for fields).
    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Characteristic of the ring (0 for characteristic zero).
    fn characteristic(&self) -> u64;

    /// Decimal rendering used by reports.
    fn render(&self, a: &Self::Elem) -> String;

    /// A root of the monic integer polynomial `poly` (coefficients from the
    /// constant term upwards), if the ring visibly contains one.
    fn find_root(&self, _poly: &[BigInt]) -> Option<Self::Elem> {
        None
    }

    /// Exact rational value of an element, when it has one.
    fn to_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    /// The integer representative of an element of `Z` or `F_p`.
    fn lift_integer(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn is_field(&self) -> bool {
        self.structure() == Structure::Field
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a / b` when the division is exact.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) { Some(self.zero()) } else { None };
        }
        match self.structure() {
            Structure::Field => self.inverse(b).map(|inv| self.mul(a, &inv)),
            Structure::Euclidean => {
                let (q, r) = self.div_rem(a, b);
                self.is_zero(&r).then_some(q)
            }
            Structure::Other => self.inverse(b).map(|inv| self.mul(a, &inv)),
        }
    }
}

/// Integer roots of a monic integer polynomial with small constant term.
fn integer_roots(poly: &[BigInt]) -> Vec<BigInt> {
    let eval = |x: &BigInt| {
        poly.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    };
    let Some(c0) = poly.first() else { return vec![] };
    if c0.is_zero() {
        return vec![BigInt::zero()];
    }
    let Some(bound) = c0.abs().to_u64().filter(|b| *b <= 1 << 24) else {
        return vec![];
    };
    let mut roots = Vec::new();
    for d in 1..=bound {
        if bound % d != 0 {
            continue;
        }
        for cand in [BigInt::from(d), -BigInt::from(d)] {
            if eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn kind(&self) -> RingKind {
        RingKind::Integers
    }
    fn structure(&self) -> Structure {
        Structure::Euclidean
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let (q, r) = a.div_mod_floor(b);
        if r.is_negative() {
            // b < 0: shift into [0, |b|)
            (q + 1, r - b)
        } else {
            (q, r)
        }
    }
    fn cmp_size(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn canonical_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn lift_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }

    fn find_root(&self, poly: &[BigInt]) -> Option<BigInt> {
        integer_roots(poly).into_iter().next()
    }
    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> RingKind {
        RingKind::Rationals
    }
    fn structure(&self) -> Structure {
        Structure::Field
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn canonical_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn find_root(&self, poly: &[BigInt]) -> Option<BigRational> {
        // monic integer polynomial: rational roots are integers
        integer_roots(poly)
            .into_iter()
            .next()
            .map(BigRational::from_integer)
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// The field with `p` elements, `p` a verified prime below 2^32.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(domain(format!("prime field characteristic {p} too large")));
        }
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn kind(&self) -> RingKind {
        RingKind::PrimeField(self.p)
    }
    fn structure(&self) -> Structure {
        Structure::Field
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_integer(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow_mod(*a, self.p - 2))
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.inverse(b).expect("division by zero")), 0)
    }
    fn canonical_unit(&self, a: &u64) -> u64 {
        self.inverse(a).unwrap_or(1)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn lift_integer(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }

    fn find_root(&self, poly: &[BigInt]) -> Option<u64> {
        if self.p > 1 << 20 {
            return None;
        }
        let coeffs: Vec<u64> = poly.iter().map(|c| self.from_integer(c)).collect();
        (0..self.p).find(|x| {
            coeffs
                .iter()
                .rev()
                .fold(0u64, |acc, c| (acc * x + c) % self.p)
                == 0
        })
    }
}

/// Maps an integer-coefficient polynomial expression in `lambda` into `ring`.
pub fn eval_integer_poly<R: Ring>(ring: &R, coeffs: &[BigInt], lambda: &R::Elem) -> R::Elem {
    coeffs.iter().rev().fold(ring.zero(), |acc, c| {
        ring.add(&ring.mul(&acc, lambda), &ring.from_integer(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_division_has_nonnegative_remainder() {
        let z = Integers;
        for (a, b) in [(7, 3), (-7, 3), (7, -3), (-7, -3)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (q, r) = z.div_rem(&a, &b);
            assert_eq!(&q * &b + &r, a);
            assert!(!r.is_negative() && r < b.abs());
        }
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(7).is_ok());
        assert!(matches!(PrimeField::new(9), Err(crate::Error::Domain(_))));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            let inv = f.inverse(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inverse(&0), None);
    }

    #[test]
    fn roots_of_small_polynomials() {
        let x2m2: Vec<BigInt> = [-2, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(Rationals.find_root(&x2m2), None);
        // 3^2 = 9 = 2 mod 7
        let f7 = PrimeField::new(7).unwrap();
        let r = f7.find_root(&x2m2).unwrap();
        assert_eq!(f7.mul(&r, &r), 2);
        let xm1: Vec<BigInt> = [-1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(Integers.find_root(&xm1), Some(BigInt::one()));
    }
}
