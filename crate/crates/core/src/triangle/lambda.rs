use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{domain, internal, Error, Result};
use crate::poly::lambda_minpoly;
use crate::ring::{Extension, ExtensionBase, Ring};

/// `Z[λ_n]` with `λ_n = 2 cos(π/n)`, realized as `Z[x]/(m)` for the
/// minimal polynomial `m` of `λ_n`.
#[derive(Debug, Clone)]
pub struct LambdaRing {
    n: u64,
    minpoly: Vec<BigInt>,
    ring: Extension,
}

pub fn lambda_ring(n: u64) -> Result<LambdaRing> {
    if n < 3 {
        return Err(domain(format!("triangle group parameter n = {n} must be at least 3")));
    }
    let minpoly = lambda_minpoly(n);
    // floating-point sanity check only; arithmetic never uses it
    let x = 2.0 * (std::f64::consts::PI / n as f64).cos();
    let scale: f64 = minpoly.iter().map(|c| c.to_f64().unwrap_or(f64::MAX).abs()).sum();
    let value = minpoly
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::MAX));
    if value.abs() > 1e-9 * scale.max(1.0) {
        return Err(internal(format!("2cos(pi/{n}) is not a root of its minimal polynomial")));
    }
    let ring = Extension::from_integer_modulus(ExtensionBase::Integers, &minpoly)?;
    Ok(LambdaRing { n, minpoly, ring })
}

impl LambdaRing {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Monic integer minimal polynomial, constant term first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// The integral ring `Z[λ_n]`.
    pub fn ring(&self) -> &Extension {
        &self.ring
    }

    pub fn lambda(&self) -> Vec<num_rational::BigRational> {
        self.ring.generator()
    }

    /// The field `Q(λ_n)`.
    pub fn field(&self) -> Result<Extension> {
        Extension::from_integer_modulus(ExtensionBase::Rationals, &self.minpoly)
    }

    pub fn approximate(&self) -> f64 {
        2.0 * (std::f64::consts::PI / self.n as f64).cos()
    }

    /// The image of `λ_n` in a coefficient ring, if the ring visibly
    /// contains a root of the minimal polynomial.
    pub fn image_in<R: Ring>(&self, r: &R) -> Result<R::Elem> {
        r.find_root(&self.minpoly).ok_or_else(|| {
            Error::UnsupportedRing(format!(
                "{:?} contains no root of the minimal polynomial of 2cos(pi/{})",
                r.kind(),
                self.n
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField, Rationals};

    #[test]
    fn small_cases() {
        let l3 = lambda_ring(3).unwrap();
        assert_eq!(l3.minimal_polynomial(), &[BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(l3.image_in(&Integers).unwrap(), BigInt::from(1));
        let l4 = lambda_ring(4).unwrap();
        assert_eq!(l4.degree(), 2);
        assert!(l4.image_in(&Rationals).is_err());
        // 3^2 = 2 mod 7
        let f7 = PrimeField::new(7).unwrap();
        let r = l4.image_in(&f7).unwrap();
        assert_eq!(f7.mul(&r, &r), 2);
        assert!(l4.field().unwrap().is_field());
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(lambda_ring(2), Err(Error::Domain(_))));
    }
}
