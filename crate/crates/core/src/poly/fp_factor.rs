//! Factorization over prime fields: squarefree decomposition, distinct-degree
//! and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derivative, div_rem, gcd, monic, mul, pow_mod, rem, sub, Factorization};
use crate::ring::{PrimeField, Ring};

type P = Vec<u64>;

fn is_one(f: &PrimeField, a: &[u64]) -> bool {
    a.len() == 1 && f.is_one(&a[0])
}

/// `a(x) = b(x)^p`; returns `b` (requires `a' = 0`).
fn pth_root(f: &PrimeField, a: &[u64]) -> P {
    let p = f.modulus() as usize;
    // coefficients are fixed by Frobenius on F_p
    a.iter().step_by(p).copied().collect()
}

fn squarefree(f: &PrimeField, a: &[u64]) -> Vec<(P, usize)> {
    let mut out = Vec::new();
    let mut c = gcd(f, a, &derivative(f, a));
    let mut w = div_rem(f, a, &c).0;
    let mut i = 1;
    while !is_one(f, &w) {
        let y = gcd(f, &w, &c);
        let z = div_rem(f, &w, &y).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        c = div_rem(f, &c, &y).0;
        w = y;
    }
    if c.len() > 1 {
        let p = f.modulus() as usize;
        for (g, m) in squarefree(f, &pth_root(f, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &PrimeField, a: &[u64]) -> Vec<(P, usize)> {
    let x: P = vec![0, 1];
    let p = BigUint::from(f.modulus());
    let mut rest = a.to_vec();
    let mut h = rem(f, &x, &rest);
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d < rest.len() {
        h = pow_mod(f, &h, &p, &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        if g.len() > 1 {
            rest = div_rem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &PrimeField, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<P>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let p = f.modulus();
    loop {
        let a: P = super::trim_ring(f, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(f, &mul(f, &t, &t), g);
                acc = super::add(f, &acc, &t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            sub(f, &pow_mod(f, &a, &e, g), &[1])
        };
        let h = gcd(f, &b, g);
        if h.len() > 1 && h.len() < g.len() {
            let other = div_rem(f, g, &h).0;
            equal_degree(f, &h, d, rng, out);
            equal_degree(f, &monic(f, &other), d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial over `F_p` into monic
/// irreducibles, sorted by degree then coefficients.
pub fn factor_fp(f: &PrimeField, a: &[u64]) -> Factorization<u64> {
    let a = super::trim_ring(f, a.to_vec());
    let unit = *a.last().expect("cannot factor the zero polynomial");
    let a = monic(f, &a);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(f, &a) {
        for (block, d) in distinct_degree(f, &part) {
            let mut irr = Vec::new();
            equal_degree(f, &block, d, &mut rng, &mut irr);
            factors.extend(irr.into_iter().map(|g| (g, mult)));
        }
    }
    factors.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)));
    Factorization { unit, factors }
}
