//! Factorization over the rationals (Zassenhaus: factor modulo a prime,
//! Hensel lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{div_rem, ext_gcd, factor_fp, monic, mul, squarefree_char0, Factorization};
use crate::ring::{is_prime, Integers, PrimeField, Rationals, Ring};

type ZPoly = Vec<BigInt>;

fn to_fp(f: &PrimeField, a: &[BigInt]) -> Vec<u64> {
    super::trim_ring(f, a.iter().map(|c| f.from_integer(c)).collect())
}

fn from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    super::trim_ring(&Integers, a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    let out = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    super::trim_ring(&Integers, out)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let mut c = content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact quotient `a / b` over the integers, if it exists.
fn divide_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.len() > a.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - b.len();
        if !top.is_zero() {
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, y) in b.iter().enumerate() {
                rem[shift + i] -= &q * y;
            }
            quot[shift] = q;
        }
        rem.pop();
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// Lifts `target ≡ a0 · b0 (mod p)`, `a0` monic, to a factorization modulo `p^k`.
fn hensel_pair(
    target: &[BigInt],
    a0: &[u64],
    b0: &[u64],
    fp: &PrimeField,
    k: u32,
) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.modulus());
    let pk = p.pow(k);
    let (g, s, t) = ext_gcd(fp, a0, b0);
    debug_assert!(g == vec![1]);
    let mut a = from_fp(a0);
    let mut b = from_fp(b0);
    let mut pj = p.clone();
    for _ in 1..k {
        let prod = mul(&Integers, &a, &b);
        let diff = super::sub(&Integers, &reduce(target, &pk), &prod);
        let e: ZPoly = reduce(&diff, &pk).iter().map(|c| c / &pj).collect();
        let e = to_fp(fp, &e);
        if !e.is_empty() {
            let (q, da) = div_rem(fp, &mul(fp, &t, &e), a0);
            let db = super::add(fp, &mul(fp, &s, &e), &mul(fp, &q, b0));
            a = super::add(&Integers, &a, &super::scale(&Integers, &from_fp(&da), &pj));
            b = super::add(&Integers, &b, &super::scale(&Integers, &from_fp(&db), &pj));
        }
        pj *= &p;
    }
    (reduce(&a, &pk), reduce(&b, &pk))
}

/// Monic lifts `h_i` with `target ≡ lc · Π h_i (mod p^k)`.
fn hensel_lift(target: &[BigInt], factors: &[Vec<u64>], fp: &PrimeField, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(fp.modulus()).pow(k);
    if factors.len() == 1 {
        // the single factor is target / lc modulo p^k
        let lc = target.last().unwrap();
        let inv = lc.modinv(&pk).expect("leading coefficient invertible mod p");
        return vec![reduce(&super::scale(&Integers, target, &inv), &pk)];
    }
    let a0 = &factors[0];
    let b0 = div_rem(fp, &to_fp(fp, target), a0).0;
    let (a, b) = hensel_pair(target, a0, &b0, fp, k);
    let mut out = vec![a];
    out.extend(hensel_lift(&b, &factors[1..], fp, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a primitive squarefree polynomial with
/// positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // pick the prime with the fewest modular factors among a few candidates
    let mut best: Option<(PrimeField, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in (3u64..).filter(|&p| is_prime(p)).take(60) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p).unwrap();
        let fbar = to_fp(&fp, f);
        let g = super::gcd(&fp, &fbar, &super::derivative(&fp, &fbar));
        if g.len() > 1 {
            continue;
        }
        let fac: Vec<Vec<u64>> = factor_fp(&fp, &fbar).factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((fp, fac));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (fp, modular) = best.expect("no suitable prime for factorization");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max * lc.abs() * 2;
    let p = BigInt::from(fp.modulus());
    let mut k = 1u32;
    while p.pow(k) <= bound {
        k += 1;
    }
    let pk = p.pow(k);
    let mut lifted = hensel_lift(f, &modular, &fp, k);

    let mut result = Vec::new();
    let mut rest = f.to_vec();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lc_rest = rest.last().unwrap().clone();
        for subset in combinations(lifted.len(), s) {
            let mut g = vec![lc_rest.clone()];
            for &i in &subset {
                g = reduce(&mul(&Integers, &g, &lifted[i]), &pk);
            }
            let g = primitive(&symmetric(&g, &pk));
            if let Some(q) = divide_exact_z(&rest, &g) {
                result.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if rest.len() > 1 {
        result.push(primitive(&rest));
    }
    result
}

fn rational_to_primitive(a: &[BigRational]) -> ZPoly {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = a.iter().map(|c| (c * &den).to_integer()).collect();
    primitive(&ints)
}

fn order<E: Ord>(factors: &mut [(Vec<E>, usize)]) {
    factors.sort_by(|x, y| {
        x.0.len()
            .cmp(&y.0.len())
            .then_with(|| x.0.iter().rev().cmp(y.0.iter().rev()))
    });
}

/// Factorization of a nonzero polynomial over Q into monic irreducibles.
pub fn factor_q(a: &[BigRational]) -> Factorization<BigRational> {
    let q = Rationals;
    let a = super::trim(a.to_vec());
    let unit = a.last().expect("cannot factor the zero polynomial").clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_char0(&q, &a) {
        for g in zassenhaus(&rational_to_primitive(&part)) {
            let g: Vec<BigRational> = g.into_iter().map(BigRational::from_integer).collect();
            factors.push((monic(&q, &g), mult));
        }
    }
    order(&mut factors);
    Factorization { unit, factors }
}

/// Factorization over Z: `unit` is the signed content, factors are
/// primitive with positive leading coefficient.
pub fn factor_integer_poly(a: &[BigInt]) -> Factorization<BigInt> {
    let rat: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
    let fq = factor_q(&rat);
    let mut factors: Vec<(ZPoly, usize)> = fq
        .factors
        .iter()
        .map(|(g, m)| (rational_to_primitive(g), *m))
        .collect();
    order(&mut factors);
    let a = super::trim_ring(&Integers, a.to_vec());
    let mut unit = content(&a);
    if a.last().is_some_and(|l| l.is_negative()) {
        unit = -unit;
    }
    debug_assert!(unit.to_i64() != Some(0));
    Factorization { unit, factors }
}
