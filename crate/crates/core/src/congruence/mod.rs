//! Congruence subgroups of `PSL₂(Z) = Δ_3`: coset labels `P¹(Z/N)` for
//! `Γ₀(N)` and `(c, d)` pairs up to sign for `Γ₁(N)`, the resulting coset
//! permutation representations, determinant-one lifts and the
//! continued-fraction reduction of modular symbols.

mod paths;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::triangle::{SignData, SubgroupRep};

pub use paths::{continued_fraction_path, mat_apply, Mat2, PathStep, QPoint};

/// A point `(c : d)` of `P¹(Z/N)` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    pub c: u64,
    pub d: u64,
}

/// A pair `(c, d)` mod `N` up to a global sign, in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CdPair {
    pub c: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CongruenceKind {
    Gamma0,
    Gamma1,
}

/// Canonical labels of the cosets of a congruence subgroup together with a
/// lookup table from every admissible pair `(c, d)` mod `N`.
#[derive(Debug, Clone)]
struct Labels {
    level: u64,
    points: Vec<(u64, u64)>,
    /// Indexed by `c·N + d`: coset index and whether `(c, d)` is the
    /// negative of the stored label.
    table: Vec<Option<(usize, bool)>>,
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

impl Labels {
    /// Enumerates orbits of `scalars` acting on admissible pairs; the label
    /// of an orbit is its lexicographically smallest element.
    fn build(level: u64, scalars: &[u64]) -> Self {
        let n = level;
        let mut table = vec![None; (n * n) as usize];
        let mut points = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if table[(c * n + d) as usize].is_some() || gcd3(c, d, n) != 1 {
                    continue;
                }
                let idx = points.len();
                points.push((c, d));
                for &u in scalars {
                    let key = ((u * c) % n * n + (u * d) % n) as usize;
                    if table[key].is_none() {
                        table[key] = Some((idx, u != 1 % n));
                    }
                }
            }
        }
        Labels { level, points, table }
    }

    fn lookup(&self, c: &BigInt, d: &BigInt) -> Option<(usize, bool)> {
        let n = BigInt::from(self.level);
        let c = c.mod_floor(&n).to_u64().unwrap();
        let d = d.mod_floor(&n).to_u64().unwrap();
        self.table[(c * self.level + d) as usize]
    }
}

fn units(n: u64) -> Vec<u64> {
    (1..=n.max(1)).map(|u| u % n).filter(|&u| u.gcd(&n) == 1).collect()
}

/// All points of `P¹(Z/N)`, each the lexicographically smallest
/// representative of its class under unit scaling, in increasing order.
pub fn p1_list(level: u64) -> Result<Vec<P1Point>> {
    check_level(level)?;
    Ok(Labels::build(level, &units(level))
        .points
        .into_iter()
        .map(|(c, d)| P1Point { c, d })
        .collect())
}

/// All pairs `(c, d)` mod `N` with `gcd(c, d, N) = 1` up to sign.
pub fn cd_pairs(level: u64) -> Result<Vec<CdPair>> {
    check_level(level)?;
    Ok(Labels::build(level, &sign_scalars(level))
        .points
        .into_iter()
        .map(|(c, d)| CdPair { c, d })
        .collect())
}

fn sign_scalars(level: u64) -> Vec<u64> {
    if level <= 2 {
        vec![1 % level]
    } else {
        vec![1, level - 1]
    }
}

fn check_level(level: u64) -> Result<()> {
    if level == 0 {
        return Err(domain("level must be positive"));
    }
    if level > 1 << 16 {
        return Err(domain(format!("level {level} is too large")));
    }
    Ok(())
}

/// `Γ₀(N)` or `Γ₁(N)` (the latter through its image in `PSL₂(Z)`), with the
/// coset action of `σ = [[0,−1],[1,0]]` and `τ = [[1,−1],[1,0]]` by right
/// multiplication on bottom rows.
#[derive(Debug, Clone)]
pub struct CongruenceSubgroup {
    kind: CongruenceKind,
    labels: Labels,
    sub: SubgroupRep,
}

impl CongruenceSubgroup {
    pub fn gamma0(level: u64) -> Result<Self> {
        check_level(level)?;
        Self::build(CongruenceKind::Gamma0, Labels::build(level, &units(level)))
    }

    pub fn gamma1(level: u64) -> Result<Self> {
        check_level(level)?;
        Self::build(CongruenceKind::Gamma1, Labels::build(level, &sign_scalars(level)))
    }

    fn build(kind: CongruenceKind, labels: Labels) -> Result<Self> {
        let image = |c: i64, d: i64| {
            labels
                .lookup(&BigInt::from(c), &BigInt::from(d))
                .expect("admissible pairs map to admissible pairs")
        };
        let mut s = Vec::new();
        let mut t = Vec::new();
        let mut sigma_neg = Vec::new();
        let mut tau_neg = Vec::new();
        for &(c, d) in &labels.points {
            let (c, d) = (c as i64, d as i64);
            let (i, e) = image(d, -c);
            s.push(i);
            sigma_neg.push(e);
            let (j, f) = image(c + d, -c);
            t.push(j);
            tau_neg.push(f);
        }
        // −1 ∈ Γ₁(N) exactly when N ≤ 2; only then is the projective image
        // enough to describe the subgroup of SL₂(Z)
        let signed = kind == CongruenceKind::Gamma1 && labels.level > 2;
        let sub = if signed {
            SubgroupRep::with_signs(3, s, t, SignData { sigma: sigma_neg, tau: tau_neg })?
        } else {
            SubgroupRep::new(3, s, t)?
        };
        Ok(CongruenceSubgroup { kind, labels, sub })
    }

    pub fn kind(&self) -> CongruenceKind {
        self.kind
    }

    pub fn level(&self) -> u64 {
        self.labels.level
    }

    pub fn subgroup(&self) -> &SubgroupRep {
        &self.sub
    }

    pub fn index(&self) -> usize {
        self.labels.points.len()
    }

    /// Coset labels `(c, d)` in coset order.
    pub fn labels(&self) -> &[(u64, u64)] {
        &self.labels.points
    }

    /// The coset `Γ·g` of a matrix with bottom row `(c, d)`, and whether
    /// `g` lies over the negative of the coset's label.
    pub fn coset_of(&self, c: &BigInt, d: &BigInt) -> Result<(usize, bool)> {
        let (i, neg) = self
            .labels
            .lookup(c, d)
            .ok_or_else(|| domain(format!("({c}, {d}) is not a unimodular row mod {}", self.level())))?;
        // without sign data the label class already absorbs ±1
        Ok((i, neg && self.sub.signs().is_some()))
    }

    /// Whether `g ∈ SL₂(Z)` lies in the subgroup of `SL₂(Z)` described here
    /// (`Γ₀(N)` or `Γ₁(N)`; projectively for `N ≤ 2`).
    pub fn contains(&self, g: &Mat2) -> bool {
        let n = BigInt::from(self.level());
        if !g[2].mod_floor(&n).is_zero() {
            return false;
        }
        match self.kind {
            CongruenceKind::Gamma0 => true,
            CongruenceKind::Gamma1 => {
                let d = g[3].mod_floor(&n);
                d == BigInt::one() % &n || (self.level() <= 2 && d == (&n - 1u32) % &n)
            }
        }
    }
}

/// A determinant-one integer matrix with bottom row congruent to `(c, d)`
/// mod `N`: the smallest `t ≥ 0` with `gcd(c', d + tN) = 1` is used, where
/// `c' = c` (or `N` when `c ≡ 0`), and `b` is taken in `0..d` (`a` in
/// `0..c` when `d = 0`).
pub fn lift_to_sl2(c: u64, d: u64, level: u64) -> Result<Mat2> {
    check_level(level)?;
    let (c, d) = (c % level, d % level);
    if gcd3(c, d, level) != 1 {
        return Err(domain(format!("gcd({c}, {d}, {level}) ≠ 1: no lift exists")));
    }
    let c0 = if c == 0 && d % level != 1 % level { level } else { c };
    let mut dd = d;
    if c0 == 0 {
        // (0 : 1) lifts to the identity
        dd = 1;
    }
    while c0.gcd(&dd) != 1 {
        dd += level;
    }
    let (ci, di) = (BigInt::from(c0), BigInt::from(dd));
    // a·d − b·c = 1
    let e = di.extended_gcd(&ci);
    debug_assert!(e.gcd.is_one());
    let (mut a, mut b) = (e.x, -e.y);
    // normalize within the solutions (a + kc, b + kd)
    let k = if di.is_zero() { a.div_floor(&ci) } else { b.div_floor(&di) };
    a -= &k * &ci;
    b -= &k * &di;
    Ok([a, b, ci, di])
}

/// Bottom row `(c, d)` of `g` reduced into `0..N`.
pub fn bottom_row(g: &Mat2, level: u64) -> (u64, u64) {
    let n = BigInt::from(level);
    (
        g[2].mod_floor(&n).to_u64().unwrap(),
        g[3].mod_floor(&n).to_u64().unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every admissible pair, deduplicated by unit scaling.
    fn brute_p1(n: u64) -> usize {
        let us: Vec<u64> = (0..n).filter(|&u| u.gcd(&n) == 1).collect();
        let mut seen = std::collections::BTreeSet::new();
        for c in 0..n {
            for d in 0..n {
                if gcd3(c, d, n) == 1 {
                    let class: std::collections::BTreeSet<(u64, u64)> =
                        us.iter().map(|&u| (u * c % n, u * d % n)).collect();
                    seen.insert(class);
                }
            }
        }
        seen.len().max(1)
    }

    #[test]
    fn small_lists() {
        assert_eq!(p1_list(1).unwrap().len(), 1);
        assert_eq!(
            p1_list(2).unwrap(),
            vec![P1Point { c: 0, d: 1 }, P1Point { c: 1, d: 0 }, P1Point { c: 1, d: 1 }]
        );
        assert_eq!(p1_list(11).unwrap().len(), 12);
        assert!(p1_list(0).is_err());
    }

    #[test]
    fn p1_sizes_match_brute_force() {
        for n in 1..=60 {
            assert_eq!(p1_list(n).unwrap().len(), brute_p1(n), "N = {n}");
        }
    }

    #[test]
    fn gamma0_small() {
        let g = CongruenceSubgroup::gamma0(1).unwrap();
        assert_eq!(g.subgroup().s(), &[0]);
        assert_eq!(g.subgroup().t(), &[0]);
        let g = CongruenceSubgroup::gamma0(2).unwrap();
        assert_eq!(g.subgroup().s(), &[1, 0, 2]);
        let g = CongruenceSubgroup::gamma0(11).unwrap();
        assert_eq!(g.index(), 12);
        assert!(g.subgroup().elliptic_counts().is_empty());
        assert_eq!(g.subgroup().genus().unwrap(), 1);
        let mut widths: Vec<usize> = g.subgroup().cusps().iter().map(|c| c.width).collect();
        widths.sort();
        assert_eq!(widths, vec![1, 11]);
    }

    #[test]
    fn gamma0_13_elliptic_points() {
        let g = CongruenceSubgroup::gamma0(13).unwrap();
        assert_eq!(g.subgroup().elliptic_counts(), vec![(2, 2), (3, 2)]);
    }

    /// `e₂(Γ₀(N))` and `e₃(Γ₀(N))` by counting solutions of `x² + 1 ≡ 0`
    /// and `x² + x + 1 ≡ 0` mod `N`.
    fn elliptic_by_congruences(n: u64) -> (usize, usize) {
        let e2 = (0..n).filter(|x| (x * x + 1) % n == 0).count();
        let e3 = (0..n).filter(|x| (x * x + x + 1) % n == 0).count();
        (e2, e3)
    }

    #[test]
    fn gamma0_elliptic_counts_up_to_50() {
        for n in 1..=50 {
            let g = CongruenceSubgroup::gamma0(n).unwrap();
            let counts = g.subgroup().elliptic_counts();
            let get = |o| counts.iter().find(|c| c.0 == o).map_or(0, |c| c.1);
            assert_eq!((get(2), get(3)), elliptic_by_congruences(n), "N = {n}");
            // a prime q ≡ 3 mod 4 (resp. 2 mod 3) dividing N kills e₂ (resp. e₃)
            let primes: Vec<u64> = (2..=n).filter(|p| n % p == 0 && crate::ring::is_prime(*p)).collect();
            if primes.iter().any(|p| p % 4 == 3) || n % 4 == 0 {
                assert_eq!(get(2), 0);
            }
            if primes.iter().any(|p| p % 3 == 2) || n % 9 == 0 {
                assert_eq!(get(3), 0);
            }
        }
    }

    #[test]
    fn gamma1_indices() {
        assert_eq!(CongruenceSubgroup::gamma1(1).unwrap().index(), 1);
        assert_eq!(CongruenceSubgroup::gamma1(2).unwrap().index(), 3);
        // ±Γ₁(4) = Γ₀(4): index 6 in PSL₂(Z), 12 in SL₂(Z)
        assert_eq!(CongruenceSubgroup::gamma1(4).unwrap().index(), 6);
        assert_eq!(CongruenceSubgroup::gamma1(5).unwrap().index(), 12);
        for n in 1..=30 {
            let pairs = cd_pairs(n).unwrap().len();
            let brute = (0..n * n)
                .filter(|x| gcd3(x / n, x % n, n) == 1)
                .count();
            assert_eq!(pairs, if n <= 2 { brute.max(1) } else { brute / 2 });
        }
    }

    #[test]
    fn lifts() {
        let id: Mat2 = [1, 0, 0, 1].map(BigInt::from);
        assert_eq!(lift_to_sl2(0, 1, 7).unwrap(), id);
        assert_eq!(lift_to_sl2(1, 0, 2).unwrap(), [0, -1, 1, 0].map(BigInt::from));
        assert_eq!(lift_to_sl2(1, 1, 2).unwrap(), [1, 0, 1, 1].map(BigInt::from));
        assert!(lift_to_sl2(2, 4, 6).is_err());
        for n in 1..=60 {
            for p in p1_list(n).unwrap() {
                let g = lift_to_sl2(p.c, p.d, n).unwrap();
                assert!(crate::modsym::is_sl2(&g));
                let g0 = CongruenceSubgroup::gamma0(n).unwrap();
                let (i, _) = g0.coset_of(&g[2], &g[3]).unwrap();
                assert_eq!(g0.labels()[i], (p.c, p.d));
            }
        }
    }

    #[test]
    fn gamma0_axioms_up_to_60() {
        for n in 1..=60 {
            let g = CongruenceSubgroup::gamma0(n).unwrap();
            assert_eq!(g.subgroup().n(), 3);
            let g1 = CongruenceSubgroup::gamma1(n).unwrap();
            assert_eq!(g1.subgroup().signs().is_some(), n > 2);
        }
    }
}
