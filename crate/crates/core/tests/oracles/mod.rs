//! Independent reference computations used by the acceptance suite and the
//! integration tests. Nothing here touches the library's algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;

/// Coefficients `c_0, …, c_order` of `q·∏_{m ≥ 1} (1 − q^m)^24`.
pub fn delta_qexp(order: usize) -> Vec<BigInt> {
    let mut prod = vec![BigInt::from(0); order + 1];
    prod[0] = BigInt::from(1);
    for m in 1..=order {
        for _ in 0..24 {
            // multiply by (1 − q^m), truncated
            for i in (m..=order).rev() {
                let t = prod[i - m].clone();
                prod[i] -= t;
            }
        }
    }
    let mut out = vec![BigInt::from(0); order + 1];
    out[1..].clone_from_slice(&prod[..order]);
    out
}

/// Projective points of `y² + y = x³ − x² − 10x − 20` over `F_p`.
pub fn curve_11a_points(p: i64) -> i64 {
    let mut affine = 0;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + y).rem_euclid(p);
            let rhs = (x * x * x - x * x - 10 * x - 20).rem_euclid(p);
            if lhs == rhs {
                affine += 1;
            }
        }
    }
    affine + 1
}

pub fn curve_11a_ap(p: i64) -> i64 {
    p + 1 - curve_11a_points(p)
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Legendre-style symbol `(a / p)` for odd primes, via Euler's criterion.
fn legendre(a: i64, p: u64) -> i64 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Classical invariants of `Γ₀(N)`: index, elliptic points of order 2 and
/// 3, cusps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gamma0Data {
    pub index: u64,
    pub e2: u64,
    pub e3: u64,
    pub cusps: u64,
}

pub fn gamma0_data(n: u64) -> Gamma0Data {
    let fac = prime_factors(n);
    let index = fac.iter().fold(n, |acc, (p, _)| acc / p * (p + 1));
    let e2 = if n.is_multiple_of(4) {
        0
    } else {
        fac.iter()
            .map(|&(p, _)| if p == 2 { 1 } else { (1 + legendre(-1, p)) as u64 })
            .product()
    };
    let e3 = if n.is_multiple_of(9) {
        0
    } else {
        fac.iter()
            .map(|&(p, _)| match p {
                3 => 1,
                // −3 ≡ 5 mod 8 is not a 2-adic square
                2 => 0,
                _ => (1 + legendre(-3, p)) as u64,
            })
            .product()
    };
    let cusps = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| euler_phi(gcd(d, n / d)))
        .sum();
    Gamma0Data { index, e2, e3, cusps }
}

/// `g = 1 + μ/12 − e₂/4 − e₃/3 − c/2`, computed in twelfths.
pub fn gamma0_genus(n: u64) -> u64 {
    let d = gamma0_data(n);
    let twelve_g = 12 + d.index as i64 - 3 * d.e2 as i64 - 4 * d.e3 as i64 - 6 * d.cusps as i64;
    assert_eq!(twelve_g % 12, 0);
    (twelve_g / 12) as u64
}

/// `dim S_k(Γ₀(N))` for even `k ≥ 2` from the classical formula.
pub fn dim_cusp_forms_gamma0(n: u64, k: u64) -> u64 {
    let d = gamma0_data(n);
    let g = gamma0_genus(n) as i64;
    if k == 2 {
        return g as u64;
    }
    let k = k as i64;
    let dim = (k - 1) * (g - 1)
        + (k / 2 - 1) * d.cusps as i64
        + d.e2 as i64 * (k / 4)
        + d.e3 as i64 * (k / 3);
    dim as u64
}
