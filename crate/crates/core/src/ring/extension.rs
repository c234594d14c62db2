use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, RingKind, Structure};
use crate::error::{domain, Result};
use crate::poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionBase {
    Integers,
    Rationals,
}

/// `B[x]/(m)` for `B` the integers or the rationals and `m` monic.
///
/// Elements are coefficient vectors of length `deg m` in the power basis
/// `1, x, …, x^{d-1}`; over the integers all coefficients are integral.
/// Over the rationals with `m` irreducible the ring is a field and inverses
/// come from the extended Euclidean algorithm in `Q[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    base: ExtensionBase,
    modulus: Arc<Vec<BigRational>>,
    field: bool,
}

impl Extension {
    pub fn new(base: ExtensionBase, modulus: Vec<BigRational>) -> Result<Self> {
        let modulus = poly::trim(modulus);
        if modulus.len() < 2 {
            return Err(domain("extension modulus must have degree at least 1"));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(domain("extension modulus must be monic"));
        }
        if base == ExtensionBase::Integers && modulus.iter().any(|c| !c.is_integer()) {
            return Err(domain("modulus over the integers must have integer coefficients"));
        }
        let field = base == ExtensionBase::Rationals && poly::is_irreducible_over_q(&modulus);
        Ok(Extension {
            base,
            modulus: Arc::new(modulus),
            field,
        })
    }

    pub fn from_integer_modulus(base: ExtensionBase, modulus: &[BigInt]) -> Result<Self> {
        Self::new(
            base,
            modulus
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn base(&self) -> ExtensionBase {
        self.base
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    /// The class of `x`.
    pub fn generator(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            v[0] = -self.modulus[0].clone();
        } else {
            v[1] = BigRational::one();
        }
        v
    }

    /// Builds an element from power-basis coefficients (any length).
    pub fn element(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        self.reduce(coeffs.to_vec())
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while c.len() > d {
            let lead = c.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let off = c.len() - d;
            for (i, m) in self.modulus[..d].iter().enumerate() {
                c[off + i] -= &lead * m;
            }
        }
        c.resize(d, BigRational::zero());
        c
    }
}

impl Ring for Extension {
    type Elem = Vec<BigRational>;

    fn kind(&self) -> RingKind {
        RingKind::Extension {
            base: self.base,
            modulus: self.modulus.to_vec(),
        }
    }

    fn structure(&self) -> Structure {
        if self.field {
            Structure::Field
        } else {
            Structure::Other
        }
    }

    fn zero(&self) -> Self::Elem {
        vec![BigRational::zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.reduce(vec![BigRational::one()])
    }

    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        self.reduce(vec![BigRational::from_integer(n.clone())])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut prod = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        // s*a + t*m = g; a is invertible iff g is a nonzero constant
        let (g, s, _) = poly::ext_gcd_q(&poly::trim(a.clone()), &self.modulus);
        if g.len() != 1 {
            return None;
        }
        let inv_g = g[0].recip();
        let inv: Vec<BigRational> = s.iter().map(|c| c * &inv_g).collect();
        let inv = self.reduce(inv);
        if self.base == ExtensionBase::Integers && inv.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(inv)
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let inv = self.inverse(b).expect("division by a non-unit");
        (self.mul(a, &inv), self.zero())
    }

    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem {
        if self.field {
            self.inverse(a).unwrap_or_else(|| self.one())
        } else {
            self.one()
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn render(&self, a: &Self::Elem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn find_root(&self, p: &[BigInt]) -> Option<Self::Elem> {
        let x = self.generator();
        let value = p.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, &x), &self.from_integer(c))
        });
        if self.is_zero(&value) {
            return Some(x);
        }
        super::integer_roots(p)
            .first()
            .map(|r| self.from_integer(r))
    }

    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }
}
