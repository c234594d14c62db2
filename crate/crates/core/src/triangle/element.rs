use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::lambda::{lambda_ring, LambdaRing};
use crate::error::{domain, Result};
use crate::ring::{Extension, Ring};

/// A letter of a reduced word in `Δ_n = ⟨σ⟩ * ⟨τ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Sigma,
    /// `τ^k` with `1 ≤ k < n`.
    Tau(u64),
}

pub type Entry = Vec<BigRational>;

/// The group `Δ_n` with its matrix realization over `Z[λ_n]`:
/// `σ = [[0,−1],[1,0]]`, `τ = [[λ,−1],[1,0]]`.
#[derive(Debug, Clone)]
pub struct TriangleGroup {
    lambda: LambdaRing,
}

/// An element of `Δ_n`: its reduced word and a determinant-one lift of its
/// projective matrix class.
#[derive(Debug, Clone)]
pub struct GroupElement {
    n: u64,
    ring: Extension,
    word: Vec<Letter>,
    lift: [Entry; 4],
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        // reduced words are unique in a free product
        self.n == other.n && self.word == other.word
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.word.hash(state);
    }
}

fn mat_mul(r: &Extension, a: &[Entry; 4], b: &[Entry; 4]) -> [Entry; 4] {
    let m = |x: &Entry, y: &Entry, z: &Entry, w: &Entry| r.add(&r.mul(x, y), &r.mul(z, w));
    [
        m(&a[0], &b[0], &a[1], &b[2]),
        m(&a[0], &b[1], &a[1], &b[3]),
        m(&a[2], &b[0], &a[3], &b[2]),
        m(&a[2], &b[1], &a[3], &b[3]),
    ]
}

impl TriangleGroup {
    pub fn new(n: u64) -> Result<Self> {
        Ok(TriangleGroup { lambda: lambda_ring(n)? })
    }

    pub fn n(&self) -> u64 {
        self.lambda.n()
    }

    pub fn lambda_ring(&self) -> &LambdaRing {
        &self.lambda
    }

    fn ring(&self) -> &Extension {
        self.lambda.ring()
    }

    fn letter_lift(&self, l: Letter) -> [Entry; 4] {
        let r = self.ring();
        match l {
            Letter::Sigma => [r.zero(), r.from_i64(-1), r.one(), r.zero()],
            Letter::Tau(k) => {
                let tau = [self.lambda.lambda(), r.from_i64(-1), r.one(), r.zero()];
                let mut acc = tau.clone();
                for _ in 1..k {
                    acc = mat_mul(r, &acc, &tau);
                }
                acc
            }
        }
    }

    pub fn identity(&self) -> GroupElement {
        let r = self.ring();
        GroupElement {
            n: self.n(),
            ring: r.clone(),
            word: Vec::new(),
            lift: [r.one(), r.zero(), r.zero(), r.one()],
        }
    }

    pub fn sigma(&self) -> GroupElement {
        self.letter(Letter::Sigma)
    }

    pub fn tau(&self) -> GroupElement {
        self.letter(Letter::Tau(1))
    }

    pub fn tau_pow(&self, k: i64) -> GroupElement {
        let k = k.rem_euclid(self.n() as i64) as u64;
        if k == 0 {
            self.identity()
        } else {
            self.letter(Letter::Tau(k))
        }
    }

    /// The parabolic generator `T = τσ = [[1, λ], [0, 1]]`.
    pub fn t(&self) -> GroupElement {
        self.tau().mul(&self.sigma()).expect("same group")
    }

    fn letter(&self, l: Letter) -> GroupElement {
        GroupElement {
            n: self.n(),
            ring: self.ring().clone(),
            word: vec![l],
            lift: self.letter_lift(l),
        }
    }

    /// Element with the given (not necessarily reduced) word.
    pub fn from_word(&self, word: &[Letter]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &l in word {
            if let Letter::Tau(k) = l {
                if k == 0 || k >= self.n() {
                    return Err(domain(format!("τ exponent {k} outside 1..{}", self.n())));
                }
            }
            acc = acc.mul(&self.letter(l))?;
        }
        Ok(acc)
    }
}

impl GroupElement {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// The determinant-one matrix obtained by multiplying the letter
    /// matrices of the reduced word.
    pub fn lift(&self) -> &[Entry; 4] {
        &self.lift
    }

    /// Canonical representative of the projective class: the first nonzero
    /// entry has positive leading coefficient.
    pub fn matrix(&self) -> [Entry; 4] {
        let first = self
            .lift
            .iter()
            .find(|e| !self.ring.is_zero(e))
            .expect("invertible matrix");
        let lead = first.iter().find(|c| !c.is_zero()).unwrap();
        if lead.is_negative() {
            self.lift.clone().map(|e| self.ring.neg(&e))
        } else {
            self.lift.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n != other.n {
            return Err(domain(format!(
                "elements of Δ_{} and Δ_{} cannot be multiplied",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut word = self.word.clone();
        let mut flips = 0u32;
        for &l in &other.word {
            match (word.last().copied(), l) {
                (Some(Letter::Sigma), Letter::Sigma) => {
                    // σ̃² = −1
                    word.pop();
                    flips += 1;
                }
                (Some(Letter::Tau(a)), Letter::Tau(b)) => {
                    word.pop();
                    // τ̃^n = −1
                    if a + b >= n {
                        flips += 1;
                    }
                    let c = (a + b) % n;
                    if c != 0 {
                        word.push(Letter::Tau(c));
                    }
                }
                _ => word.push(l),
            }
        }
        let mut lift = mat_mul(&self.ring, &self.lift, &other.lift);
        if flips % 2 == 1 {
            lift = lift.map(|e| self.ring.neg(&e));
        }
        Ok(GroupElement {
            n,
            ring: self.ring.clone(),
            word,
            lift,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let r = &self.ring;
        let n = self.n;
        let word: Vec<Letter> = self
            .word
            .iter()
            .rev()
            .map(|l| match l {
                Letter::Sigma => Letter::Sigma,
                Letter::Tau(k) => Letter::Tau(n - k),
            })
            .collect();
        // σ̃^{-1} = −σ̃ and τ̃^{-k} = −τ̃^{n−k}: the letter-wise lift of the
        // inverse word is (−1)^len · lift^{-1}
        let m = &self.lift;
        let adj = [m[3].clone(), r.neg(&m[1]), r.neg(&m[2]), m[0].clone()];
        let lift = if self.word.len() % 2 == 1 { adj.map(|e| r.neg(&e)) } else { adj };
        GroupElement {
            n,
            ring: r.clone(),
            word,
            lift,
        }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement {
            n: self.n,
            ring: self.ring.clone(),
            word: Vec::new(),
            lift: [self.ring.one(), self.ring.zero(), self.ring.zero(), self.ring.one()],
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base).expect("same group");
        }
        acc
    }

    pub fn conjugate_by(&self, g: &GroupElement) -> Result<GroupElement> {
        g.mul(self)?.mul(&g.inverse())
    }

    /// Order in `Δ_n` (projectively), `None` for infinite order.
    pub fn order(&self) -> Option<u64> {
        let n = self.n;
        let mut w = self.word.clone();
        // cyclic reduction: conjugating away matching ends
        loop {
            if w.len() < 2 {
                break;
            }
            match (w[0], w[w.len() - 1]) {
                (Letter::Sigma, Letter::Sigma) => {
                    w.pop();
                    w.remove(0);
                }
                (Letter::Tau(a), Letter::Tau(b)) => {
                    w.pop();
                    w.remove(0);
                    let c = (a + b) % n;
                    if c != 0 {
                        w.insert(0, Letter::Tau(c));
                    }
                }
                _ => break,
            }
        }
        match w.as_slice() {
            [] => Some(1),
            [Letter::Sigma] => Some(2),
            [Letter::Tau(k)] => Some(n / n.gcd(k)),
            _ => None,
        }
    }

    pub fn render_word(&self) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        self.word
            .iter()
            .map(|l| match l {
                Letter::Sigma => "s".to_string(),
                Letter::Tau(1) => "t".to_string(),
                Letter::Tau(k) => format!("t^{k}"),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sigma_squared_is_identity() {
        let g = TriangleGroup::new(5).unwrap();
        assert!(g.sigma().mul(&g.sigma()).unwrap().is_identity());
        assert!(g.tau().pow(5).is_identity());
    }

    #[test]
    fn parabolic_generator() {
        for n in 3..8 {
            let g = TriangleGroup::new(n).unwrap();
            let t = g.t();
            let lam = g.lambda_ring().lambda();
            let m = t.matrix();
            let r = g.lambda_ring().ring();
            assert_eq!(m, [r.one(), lam, r.zero(), r.one()]);
            assert_eq!(t.order(), None);
        }
        // n = 3: λ = 1
        let g = TriangleGroup::new(3).unwrap();
        assert_eq!(g.t().matrix(), [vec![q(1)], vec![q(1)], vec![q(0)], vec![q(1)]]);
    }

    #[test]
    fn mismatched_groups() {
        let a = TriangleGroup::new(3).unwrap().sigma();
        let b = TriangleGroup::new(4).unwrap().sigma();
        assert!(matches!(a.mul(&b), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn orders_of_conjugates() {
        let g = TriangleGroup::new(6).unwrap();
        let h = g.from_word(&[Letter::Sigma, Letter::Tau(2)]).unwrap();
        assert_eq!(g.tau_pow(2).conjugate_by(&h).unwrap().order(), Some(3));
        assert_eq!(g.sigma().conjugate_by(&h).unwrap().order(), Some(2));
        assert_eq!(h.order(), None);
    }

    fn arb_word(n: u64) -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(
            prop_oneof![Just(Letter::Sigma), (1..n).prop_map(Letter::Tau)],
            0..8,
        )
    }

    proptest! {
        #[test]
        fn words_and_matrices_agree(
            (n, wa, wb, wc) in (3u64..8).prop_flat_map(|n| (Just(n), arb_word(n), arb_word(n), arb_word(n)))
        ) {
            let g = TriangleGroup::new(n).unwrap();
            let a = g.from_word(&wa).unwrap();
            let b = g.from_word(&wb).unwrap();
            let c = g.from_word(&wc).unwrap();
            let r = g.lambda_ring().ring();
            // lifts multiply exactly up to the tracked sign
            let ab = a.mul(&b).unwrap();
            let prod = mat_mul(r, a.lift(), b.lift());
            let neg = prod.clone().map(|e| r.neg(&e));
            prop_assert!(*ab.lift() == prod || *ab.lift() == neg);
            // associativity of words
            let left = ab.mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.matrix(), right.matrix());
            // inverse
            prop_assert!(a.mul(&a.inverse()).unwrap().is_identity());
            let ident = a.mul(&a.inverse()).unwrap();
            prop_assert_eq!(ident.lift().clone(), [r.one(), r.zero(), r.zero(), r.one()]);
        }
    }
}
