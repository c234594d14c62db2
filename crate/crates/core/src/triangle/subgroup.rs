use std::collections::VecDeque;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::element::{GroupElement, Letter, TriangleGroup};
use crate::error::{internal, Error, Result};

fn invalid(axiom: impl Into<String>) -> Error {
    Error::InvalidSubgroup { axiom: axiom.into() }
}

/// Sign data for subgroups of `SL₂` that do not contain `−1`.
///
/// Cosets of `±Γ` are labelled by one of the two `Γ`-cosets above them.
/// `sigma[i]` records whether `σ̃ = [[0,−1],[1,0]]` sends the chosen coset
/// over `i` to the negative of the chosen coset over `i·σ`; likewise for
/// `τ̃` in `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignData {
    pub sigma: Vec<bool>,
    pub tau: Vec<bool>,
}

/// A finite-index subgroup `Γ ≤ Δ_n` given by the right action of `σ` and
/// `τ` on the cosets `Γ\Δ_n`; coset `0` is `Γ` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRep {
    n: u64,
    s: Vec<usize>,
    t: Vec<usize>,
    signs: Option<SignData>,
}

/// A cusp class: one orbit of `T = τσ` on the cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cusp {
    /// Smallest coset in the orbit.
    pub coset: usize,
    pub width: usize,
}

/// An elliptic point of `Γ`, with a generator of its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticPoint {
    pub order: u64,
    pub coset: usize,
    pub stabilizer: GroupElement,
}

/// Permutation-file document: `n`, `mu` and 0-based image arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermFile {
    pub n: u64,
    pub mu: usize,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

fn check_permutation(p: &[usize], name: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || std::mem::replace(&mut seen[x], true) {
            return Err(invalid(format!("{name} is not a permutation of 0..{}", p.len())));
        }
    }
    Ok(())
}

/// Cycles of a permutation, each starting at its smallest element, in
/// increasing order of that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = p[i];
        }
        out.push(c);
    }
    out
}

impl SubgroupRep {
    /// Validates `s² = 1`, `tⁿ = 1` and transitivity.
    pub fn new(n: u64, s: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        Self::build(n, s, t, None)
    }

    /// As [`SubgroupRep::new`], with sign data describing a subgroup of
    /// `SL₂` not containing `−1`. Checks `σ̃² = τ̃ⁿ = −1` on every coset.
    pub fn with_signs(n: u64, s: Vec<usize>, t: Vec<usize>, signs: SignData) -> Result<Self> {
        Self::build(n, s, t, Some(signs))
    }

    fn build(n: u64, s: Vec<usize>, t: Vec<usize>, signs: Option<SignData>) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("n = {n} must be at least 3")));
        }
        if s.is_empty() {
            return Err(invalid("index must be positive"));
        }
        if s.len() != t.len() {
            return Err(invalid("s and t must act on the same set"));
        }
        check_permutation(&s, "s")?;
        check_permutation(&t, "t")?;
        let mu = s.len();
        if (0..mu).any(|i| s[s[i]] != i) {
            return Err(invalid("s∘s = identity"));
        }
        for i in 0..mu {
            let mut j = i;
            for _ in 0..n {
                j = t[j];
            }
            if j != i {
                return Err(invalid(format!("t^{n} = identity")));
            }
        }
        let sub = SubgroupRep { n, s, t, signs };
        if sub.orbit_sizes_from_zero() != mu {
            return Err(invalid("⟨s, t⟩ acts transitively"));
        }
        if let Some(sg) = &sub.signs {
            if sg.sigma.len() != mu || sg.tau.len() != mu {
                return Err(invalid("sign vectors have length mu"));
            }
            for i in 0..mu {
                if sg.sigma[i] == sg.sigma[sub.s[i]] {
                    return Err(invalid("σ̃² = −1 on signed cosets"));
                }
                let (j, neg) = sub.act_signed(i, Letter::Tau(n));
                if j != i || !neg {
                    return Err(invalid("τ̃ⁿ = −1 on signed cosets"));
                }
            }
        }
        Ok(sub)
    }

    /// The whole group `Δ_n`.
    pub fn full(n: u64) -> Result<Self> {
        Self::new(n, vec![0], vec![0])
    }

    fn orbit_sizes_from_zero(&self) -> usize {
        let mut seen = vec![false; self.index()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in [self.s[i], self.t[i]] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The index `μ = [Δ_n : Γ]`.
    pub fn index(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn signs(&self) -> Option<&SignData> {
        self.signs.as_ref()
    }

    /// The permutation of `T = τσ`: `i·T = (i·τ)·σ`.
    pub fn t_perm(&self) -> Vec<usize> {
        (0..self.index()).map(|i| self.s[self.t[i]]).collect()
    }

    pub fn act(&self, i: usize, l: Letter) -> usize {
        self.act_signed(i, l).0
    }

    /// The coset `i·g` together with the sign picked up by the lift
    /// (always `false` without sign data). `Tau(k)` may exceed `n`.
    pub fn act_signed(&self, i: usize, l: Letter) -> (usize, bool) {
        match l {
            Letter::Sigma => (self.s[i], self.signs.as_ref().is_some_and(|sg| sg.sigma[i])),
            Letter::Tau(k) => {
                let mut j = i;
                let mut neg = false;
                for _ in 0..k {
                    if let Some(sg) = &self.signs {
                        neg ^= sg.tau[j];
                    }
                    j = self.t[j];
                }
                (j, neg)
            }
        }
    }

    pub fn act_word(&self, i: usize, word: &[Letter]) -> (usize, bool) {
        word.iter().fold((i, false), |(j, neg), &l| {
            let (k, e) = self.act_signed(j, l);
            (k, neg ^ e)
        })
    }

    /// Reduced words `w_i` with `Γ·w_i` the coset `i`, from a breadth-first
    /// search trying `σ, τ, …, τ^{n−1}` in that order from the lowest
    /// coset first.
    pub fn coset_rep_words(&self) -> Vec<Vec<Letter>> {
        let mu = self.index();
        let mut words: Vec<Option<Vec<Letter>>> = vec![None; mu];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let w = words[i].clone().unwrap();
            let gens = std::iter::once(Letter::Sigma).chain((1..self.n).map(Letter::Tau));
            for g in gens {
                // skip letters that would not give a reduced word
                match (w.last(), g) {
                    (Some(Letter::Sigma), Letter::Sigma) | (Some(Letter::Tau(_)), Letter::Tau(_)) => {
                        continue
                    }
                    _ => {}
                }
                let j = self.act(i, g);
                if words[j].is_none() {
                    let mut wj = w.clone();
                    wj.push(g);
                    words[j] = Some(wj);
                    queue.push_back(j);
                }
            }
        }
        words.into_iter().map(|w| w.expect("transitive action")).collect()
    }

    pub fn coset_reps(&self, group: &TriangleGroup) -> Result<Vec<GroupElement>> {
        self.check_group(group)?;
        self.coset_rep_words().iter().map(|w| group.from_word(w)).collect()
    }

    fn check_group(&self, group: &TriangleGroup) -> Result<()> {
        if group.n() != self.n {
            return Err(crate::error::domain(format!(
                "subgroup of Δ_{} used with Δ_{}",
                self.n,
                group.n()
            )));
        }
        Ok(())
    }

    pub fn cusps(&self) -> Vec<Cusp> {
        cycles(&self.t_perm())
            .into_iter()
            .map(|c| Cusp { coset: c[0], width: c.len() })
            .collect()
    }

    /// Elliptic points: fixed points of `s` (order 2) and `t`-cycles of
    /// length `ℓ < n` (order `n/ℓ`), each with the stabilizer generator
    /// `w·σ·w⁻¹` or `w·τ^ℓ·w⁻¹` for the coset representative `w`.
    pub fn elliptic_points(&self, group: &TriangleGroup) -> Result<Vec<EllipticPoint>> {
        self.check_group(group)?;
        let reps = self.coset_reps(group)?;
        let mut out = Vec::new();
        for i in (0..self.index()).filter(|&i| self.s[i] == i) {
            out.push(EllipticPoint {
                order: 2,
                coset: i,
                stabilizer: group.sigma().conjugate_by(&reps[i])?,
            });
        }
        for c in cycles(&self.t) {
            let l = c.len() as u64;
            if l < self.n {
                out.push(EllipticPoint {
                    order: self.n / l,
                    coset: c[0],
                    stabilizer: group.tau_pow(l as i64).conjugate_by(&reps[c[0]])?,
                });
            }
        }
        Ok(out)
    }

    /// `(order, count)` pairs for the elliptic points, sorted by order.
    pub fn elliptic_counts(&self) -> Vec<(u64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        let e2 = self.s.iter().enumerate().filter(|&(i, &j)| i == j).count();
        if e2 > 0 {
            counts.insert(2u64, e2);
        }
        for c in cycles(&self.t) {
            let l = c.len() as u64;
            if l < self.n {
                *counts.entry(self.n / l).or_insert(0) += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// Genus of `Γ\H̄` from `2 − 2g = c(s) + c(t) + c(T) − μ`.
    pub fn genus(&self) -> Result<u64> {
        let chi = cycles(&self.s).len() as i64 + cycles(&self.t).len() as i64
            + cycles(&self.t_perm()).len() as i64
            - self.index() as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(internal(format!("Euler characteristic {chi} gives no valid genus")));
        }
        Ok(((2 - chi) / 2) as u64)
    }

    pub fn to_perm_file(&self) -> PermFile {
        PermFile {
            n: self.n,
            mu: self.index(),
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }

    pub fn from_perm_file(p: &PermFile) -> Result<Self> {
        if p.s.len() != p.mu || p.t.len() != p.mu {
            return Err(invalid(format!("s and t must have length mu = {}", p.mu)));
        }
        Self::new(p.n, p.s.clone(), p.t.clone())
    }

    /// Compact JSON document terminated by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_perm_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: PermFile = serde_json::from_str(text)
            .map_err(|e| crate::error::domain(format!("malformed permutation file: {e}")))?;
        Self::from_perm_file(&p)
    }

    /// A random transitive subgroup of `Δ_n` with index at most `max_mu`:
    /// `s` a random involution and `t` a random permutation whose cycle
    /// lengths divide `n`, retried until transitive.
    pub fn random_transitive(n: u64, max_mu: usize, rng: &mut impl rand::Rng) -> Result<Self> {
        if max_mu == 0 {
            return Err(crate::error::domain("index bound must be positive"));
        }
        let divisors: Vec<usize> = (1..=n as usize).filter(|d| (n as usize).is_multiple_of(*d)).collect();
        loop {
            let mu = rng.gen_range(1..=max_mu);
            let mut pts: Vec<usize> = (0..mu).collect();
            pts.shuffle(rng);
            let mut s: Vec<usize> = (0..mu).collect();
            let pairs = rng.gen_range(0..=mu / 2);
            for k in 0..pairs {
                let (a, b) = (pts[2 * k], pts[2 * k + 1]);
                s[a] = b;
                s[b] = a;
            }
            pts.shuffle(rng);
            let mut t: Vec<usize> = (0..mu).collect();
            let mut pos = 0;
            while pos < mu {
                let fits: Vec<usize> = divisors.iter().copied().filter(|&d| pos + d <= mu).collect();
                let d = *fits.choose(rng).unwrap();
                for k in 0..d {
                    t[pts[pos + k]] = pts[pos + (k + 1) % d];
                }
                pos += d;
            }
            if let Ok(sub) = Self::new(n, s, t) {
                return Ok(sub);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    // Γ₀(2) on P¹(Z/2) = [(0:1), (1:0), (1:1)], computed by hand from
    // (c:d)·σ = (d:−c) and (c:d)·τ = (c+d : −c).
    fn gamma0_2() -> SubgroupRep {
        SubgroupRep::new(3, vec![1, 0, 2], vec![1, 2, 0]).unwrap()
    }

    #[test]
    fn full_group() {
        for n in 3..9 {
            let g = SubgroupRep::full(n).unwrap();
            assert_eq!(g.cusps(), vec![Cusp { coset: 0, width: 1 }]);
            assert_eq!(g.elliptic_counts(), vec![(2, 1), (n, 1)]);
            assert_eq!(g.genus().unwrap(), 0);
        }
    }

    #[test]
    fn axioms_are_named() {
        let err = SubgroupRep::new(4, vec![0, 1, 2], vec![1, 2, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubgroup { ref axiom } if axiom.contains("t^4")));
        let err = SubgroupRep::new(3, vec![1, 2, 0], vec![0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubgroup { ref axiom } if axiom.contains("s∘s")));
        let err = SubgroupRep::new(3, vec![0, 1], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubgroup { ref axiom } if axiom.contains("transitive")));
    }

    #[test]
    fn schreier_reps_replay() {
        let sub = gamma0_2();
        let words = sub.coset_rep_words();
        assert_eq!(words.len(), 3);
        assert!(words[0].is_empty());
        for (i, w) in words.iter().enumerate() {
            assert_eq!(sub.act_word(0, w).0, i);
        }
        // every Schreier edge: rep(i)·g lies in coset i·g
        let g = TriangleGroup::new(3).unwrap();
        let reps = sub.coset_reps(&g).unwrap();
        for i in 0..3 {
            for l in [Letter::Sigma, Letter::Tau(1), Letter::Tau(2)] {
                let x = reps[i].mul(&g.from_word(&[l]).unwrap()).unwrap();
                assert_eq!(sub.act_word(0, x.word()).0, sub.act(i, l));
            }
        }
    }

    #[test]
    fn right_action_of_t() {
        let sub = gamma0_2();
        for i in 0..3 {
            let via_letters = sub.act(sub.act(i, Letter::Tau(1)), Letter::Sigma);
            assert_eq!(sub.t_perm()[i], via_letters);
        }
    }

    #[test]
    fn free_action_level_two() {
        // image of Γ(2): right regular action of S₃ = Δ₃/Γ(2), with σ a
        // transposition and τ a 3-cycle
        let elems: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [1, 2, 0],
            [2, 1, 0],
            [2, 0, 1],
            [0, 2, 1],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [b[a[0]], b[a[1]], b[a[2]]];
        let index = |x: [usize; 3]| elems.iter().position(|e| *e == x).unwrap();
        let s: Vec<usize> = elems.iter().map(|e| index(compose(e, &[1, 0, 2]))).collect();
        let t: Vec<usize> = elems.iter().map(|e| index(compose(e, &[1, 2, 0]))).collect();
        let sub = SubgroupRep::new(3, s, t).unwrap();
        let widths: Vec<usize> = sub.cusps().iter().map(|c| c.width).collect();
        assert_eq!(widths, vec![2, 2, 2]);
        assert!(sub.elliptic_counts().is_empty());
        assert_eq!(sub.genus().unwrap(), 0);
    }

    #[test]
    fn elliptic_stabilizers_fix_their_coset() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 3..7 {
            let g = TriangleGroup::new(n).unwrap();
            for _ in 0..10 {
                let sub = SubgroupRep::random_transitive(n, 12, &mut rng).unwrap();
                for p in sub.elliptic_points(&g).unwrap() {
                    // the stabilizer lies in Γ and has the stated order
                    assert_eq!(sub.act_word(0, p.stabilizer.word()).0, 0);
                    assert_eq!(p.stabilizer.order(), Some(p.order));
                }
            }
        }
    }

    #[test]
    fn perm_file_round_trip() {
        let sub = gamma0_2();
        let text = sub.to_json();
        assert_eq!(text, "{\"n\":3,\"mu\":3,\"s\":[1,0,2],\"t\":[1,2,0]}\n");
        let back = SubgroupRep::from_json(&text).unwrap();
        assert_eq!(back, sub);
        assert_eq!(back.to_json(), text);
        assert!(SubgroupRep::from_json("{\"n\":3,\"mu\":2,\"s\":[0],\"t\":[0]}").is_err());
    }

    #[test]
    fn random_subgroups_have_nonnegative_genus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for n in 3..=8 {
            for _ in 0..40 {
                let sub = SubgroupRep::random_transitive(n, 24, &mut rng).unwrap();
                assert!(sub.genus().is_ok());
                let widths: usize = sub.cusps().iter().map(|c| c.width).sum();
                assert_eq!(widths, sub.index());
                let fixed = sub.s().iter().enumerate().filter(|&(i, &j)| i == j).count();
                let two_cycles = cycles(sub.s()).iter().filter(|c| c.len() == 2).count();
                assert_eq!(fixed + 2 * two_cycles, sub.index());
            }
        }
    }
}
