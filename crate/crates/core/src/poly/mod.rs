//! Dense univariate polynomials over a [`Ring`].
//!
//! A polynomial is a `Vec` of coefficients from the constant term upwards
//! with no trailing zeros; the zero polynomial is the empty vector.

mod fp_factor;
mod q_factor;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Rationals, Ring};

pub use fp_factor::factor_fp;
pub use q_factor::{factor_integer_poly, factor_q};

/// Irreducible factors with multiplicities. Over a field the factors are
/// monic and `unit` is the leading coefficient of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Vec<E>, usize)>,
}

pub fn trim_ring<R: Ring>(r: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
    while p.last().is_some_and(|c| r.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn trim(p: Vec<BigRational>) -> Vec<BigRational> {
    trim_ring(&Rationals, p)
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim_ring(r, out)
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    add(r, a, &b.iter().map(|c| r.neg(c)).collect::<Vec<_>>())
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trim_ring(r, a.iter().map(|x| r.mul(x, c)).collect())
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim_ring(r, out)
}

/// `x - c`.
pub fn linear<R: Ring>(r: &R, c: &R::Elem) -> Vec<R::Elem> {
    vec![r.neg(c), r.one()]
}

/// Division with remainder; the leading coefficient of `b` must be a unit.
pub fn div_rem<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let lead_inv = r
        .inverse(b.last().expect("polynomial division by zero"))
        .expect("leading coefficient of divisor must be a unit");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![r.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - b.len();
        if !r.is_zero(&lead) {
            let c = r.mul(&lead, &lead_inv);
            for (i, y) in b.iter().enumerate() {
                rem[shift + i] = r.sub(&rem[shift + i], &r.mul(&c, y));
            }
            quot[shift] = c;
        }
        rem.pop();
    }
    (trim_ring(r, quot), trim_ring(r, rem))
}

pub fn rem<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    div_rem(r, a, b).1
}

pub fn monic<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(r, a, &r.inverse(l).expect("leading coefficient not invertible")),
    }
}

/// Monic greatest common divisor over a field.
pub fn gcd<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let t = rem(r, &a, &b);
        a = b;
        b = t;
    }
    monic(r, &a)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd (over a field).
pub fn ext_gcd<R: Ring>(
    r: &R,
    a: &[R::Elem],
    b: &[R::Elem],
) -> (Vec<R::Elem>, Vec<R::Elem>, Vec<R::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![r.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![r.one()]);
    while !r1.is_empty() {
        let (q, rr) = div_rem(r, &r0, &r1);
        let s2 = sub(r, &s0, &mul(r, &q, &s1));
        let t2 = sub(r, &t0, &mul(r, &q, &t1));
        r0 = std::mem::replace(&mut r1, rr);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last().cloned() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = r.inverse(&l).expect("field expected");
            (scale(r, &r0, &inv), scale(r, &s0, &inv), scale(r, &t0, &inv))
        }
    }
}

pub fn ext_gcd_q(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    ext_gcd(&Rationals, a, b)
}

pub fn derivative<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
        .collect();
    trim_ring(r, out)
}

pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    a.iter()
        .rev()
        .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

/// `base^e mod m`.
pub fn pow_mod<R: Ring>(r: &R, base: &[R::Elem], e: &BigUint, m: &[R::Elem]) -> Vec<R::Elem> {
    let mut acc = rem(r, &[r.one()], m);
    let b = rem(r, base, m);
    for i in (0..e.bits()).rev() {
        acc = rem(r, &mul(r, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(r, &mul(r, &acc, &b), m);
        }
    }
    acc
}

/// Human-readable rendering in descending powers of `var`.
pub fn render<R: Ring>(r: &R, a: &[R::Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if r.is_zero(c) {
            continue;
        }
        let (negative, mag) = match r.to_rational(c) {
            Some(q) if r.characteristic() == 0 => (q.is_negative(), q.abs().to_string()),
            Some(q) => (false, q.to_string()),
            None => (false, format!("({})", r.render(c))),
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = match (mono.is_empty(), mag == "1") {
            (true, _) => mag,
            (false, true) => mono,
            (false, false) => format!("{mag}*{mono}"),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// The cyclotomic polynomial `Φ_m` over the integers.
pub fn cyclotomic(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let z = crate::ring::Integers;
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = div_rem(&z, &p, &cyclotomic(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Minimal polynomial of `2 cos(π/n)` over the rationals, `n ≥ 3`.
///
/// `Φ_{2n}` is palindromic of degree `2d`; writing `Φ_{2n}(x) = x^d P(x + 1/x)`
/// via `x^j + x^{-j} = C_j(x + 1/x)` with `C_0 = 2`, `C_1 = y`,
/// `C_{j+1} = y C_j − C_{j−1}` gives `P`.
pub fn lambda_minpoly(n: u64) -> Vec<BigInt> {
    let z = crate::ring::Integers;
    let phi = cyclotomic(2 * n);
    let d = (phi.len() - 1) / 2;
    let two = BigInt::from(2);
    let mut c_prev = vec![two.clone()];
    let mut c_cur = vec![BigInt::zero(), BigInt::one()];
    let mut out = vec![phi[d].clone()];
    for j in 1..=d {
        out = add(&z, &out, &scale(&z, &c_cur, &phi[d + j]));
        let next = sub(&z, &mul(&z, &[BigInt::zero(), BigInt::one()], &c_cur), &c_prev);
        c_prev = std::mem::replace(&mut c_cur, next);
    }
    out
}

/// Squarefree check and irreducibility over the rationals.
pub fn is_irreducible_over_q(p: &[BigRational]) -> bool {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return false;
    }
    let f = factor_q(&p);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

/// Squarefree decomposition over a field of characteristic zero:
/// pairs `(g_i, i)` with `a = unit · Π g_i^i`, each `g_i` monic squarefree.
pub fn squarefree_char0<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<(Vec<R::Elem>, usize)> {
    let a = monic(r, a);
    let mut out = Vec::new();
    let mut b = gcd(r, &a, &derivative(r, &a));
    let mut c = div_rem(r, &a, &b).0;
    let mut i = 1;
    while c.len() > 1 {
        let y = gcd(r, &b, &c);
        let z = div_rem(r, &c, &y).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        b = div_rem(r, &b, &y).0;
        c = y;
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;

    fn zp(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), zp(&[-1, 1]));
        assert_eq!(cyclotomic(6), zp(&[1, -1, 1]));
        assert_eq!(cyclotomic(10), zp(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), zp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn lambda_minpolys() {
        assert_eq!(lambda_minpoly(3), zp(&[-1, 1]));
        assert_eq!(lambda_minpoly(4), zp(&[-2, 0, 1]));
        assert_eq!(lambda_minpoly(5), zp(&[-1, -1, 1]));
        assert_eq!(lambda_minpoly(6), zp(&[-3, 0, 1]));
    }

    #[test]
    fn lambda_minpoly_matches_numeric_conjugates() {
        // Π (y − 2cos(πj/n)) over odd j coprime to n, rounded
        for n in 3u64..=12 {
            let mut coeffs = vec![1.0f64];
            for j in (1..n).filter(|j| j % 2 == 1 && num_integer::gcd(*j, 2 * n) == 1) {
                let root = 2.0 * (std::f64::consts::PI * j as f64 / n as f64).cos();
                let mut next = vec![0.0; coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * root;
                }
                coeffs = next;
            }
            let rounded: Vec<BigInt> = coeffs.iter().map(|c| BigInt::from(c.round() as i64)).collect();
            assert_eq!(lambda_minpoly(n), rounded, "n = {n}");
        }
    }

    #[test]
    fn division_and_gcd() {
        let z = Integers;
        let q = Rationals;
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[1, 1]);
        let (quot, r) = div_rem(&z, &a, &b);
        assert_eq!(quot, zp(&[-1, 1]));
        assert!(r.is_empty());
        let to_q = |v: Vec<BigInt>| v.into_iter().map(BigRational::from_integer).collect::<Vec<_>>();
        let g = gcd(&q, &to_q(zp(&[-1, 0, 1])), &to_q(zp(&[1, 2, 1])));
        assert_eq!(g, to_q(zp(&[1, 1])));
    }

    #[test]
    fn rendering() {
        let z = Integers;
        assert_eq!(render(&z, &zp(&[576, 48, 1]), "x"), "x^2 + 48*x + 576");
        assert_eq!(render(&z, &zp(&[-1, -1, 1]), "x"), "x^2 - x - 1");
        assert_eq!(render(&z, &zp(&[2, -3]), "x"), "-3*x + 2");
    }

    #[test]
    fn squarefree_parts() {
        let q = Rationals;
        let f: Vec<BigRational> = zp(&[4, 4, 1])
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let parts = squarefree_char0(&q, &f);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 2);
    }
}
