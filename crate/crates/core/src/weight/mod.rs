//! Coefficient modules: `V = R[X,Y]_{k−2}` with the action of `SL₂` and
//! generic modules given by the action of the lifts `σ̃`, `τ̃`, together
//! with the local terms `V^H / N_H V` at finite cyclic stabilizers.

use crate::error::{domain, internal, Error, Result};
use crate::linalg::{kernel, Matrix, QuotientModule};
use crate::ring::Ring;
use crate::triangle::{lambda_ring, Entry, GroupElement, Letter};

/// How the scalar `−1 ∈ SL₂` is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `−1` acts trivially, so `V` is a module for `Δ_n ⊂ PSL₂`; even
    /// weight only.
    Projective,
    /// `−1` acts as `(−1)^k`; for subgroups of `SL₂(Z)` not containing `−1`.
    PlusMinusOne,
}

/// A free coefficient module `V` with the action of `σ̃ = [[0,−1],[1,0]]`
/// and `τ̃ = [[λ,−1],[1,0]]` (so `σ̃² = τ̃ⁿ = −1` in `SL₂`).
#[derive(Debug, Clone)]
pub struct WeightModule<R: Ring> {
    ring: R,
    n: u64,
    weight: Option<u64>,
    variant: Variant,
    lambda: Option<R::Elem>,
    /// `ρ(τ̃)^j` for `0 ≤ j < n`.
    tau_pows: Vec<Matrix<R>>,
    sigma: Matrix<R>,
    /// Whether `−1` acts as `−1` (otherwise trivially).
    negate: bool,
}

fn scalar_sign<R: Ring>(m: &Matrix<R>) -> Option<bool> {
    let r = m.ring();
    let n = m.rows();
    if m.is_identity() {
        Some(false)
    } else if *m == Matrix::scalar(r.clone(), n, &r.from_i64(-1)) {
        Some(true)
    } else {
        None
    }
}

impl<R: Ring> WeightModule<R> {
    /// `R[X,Y]_{k−2}` for `Δ_n`. For `k > 2` the ring must contain a root
    /// of the minimal polynomial of `λ_n`.
    pub fn new(ring: R, n: u64, k: u64, variant: Variant) -> Result<Self> {
        if k < 2 {
            return Err(domain(format!("weight {k} must be at least 2")));
        }
        if variant == Variant::Projective && k % 2 == 1 {
            return Err(domain(format!(
                "odd weight {k}: −1 acts as −1, so the projective variant is not defined"
            )));
        }
        if variant == Variant::PlusMinusOne && n != 3 {
            return Err(domain("the ±1 variant is only available for n = 3"));
        }
        let lam = lambda_ring(n)?;
        let lambda = if k > 2 { Some(lam.image_in(&ring)?) } else { None };
        let mut w = WeightModule {
            ring: ring.clone(),
            n,
            weight: Some(k),
            variant,
            lambda: lambda.clone(),
            tau_pows: Vec::new(),
            sigma: Matrix::identity(ring.clone(), 1),
            negate: k % 2 == 1,
        };
        let (z, o) = (ring.zero(), ring.one());
        let m1 = ring.from_i64(-1);
        w.sigma = w.action_matrix(&[z.clone(), m1.clone(), o.clone(), z.clone()]);
        let lam_r = lambda.unwrap_or_else(|| ring.zero());
        let tau = w.action_matrix(&[lam_r, m1, o, z]);
        w.tau_pows = powers(&tau, n);
        Ok(w)
    }

    /// The trivial module `R` (weight 2).
    pub fn trivial(ring: R, n: u64) -> Result<Self> {
        Self::new(ring, n, 2, Variant::Projective)
    }

    /// A generic module from the matrices of `σ̃` and `τ̃`, which must
    /// satisfy `σ̃² = τ̃ⁿ = ±1` with the same sign.
    pub fn from_generators(ring: R, n: u64, sigma: Matrix<R>, tau: Matrix<R>) -> Result<Self> {
        lambda_ring(n)?;
        if !sigma.is_square() || !tau.is_square() || sigma.rows() != tau.rows() || sigma.rows() == 0 {
            return Err(crate::error::shape("generator matrices must be square of equal size"));
        }
        let s2 = scalar_sign(&sigma.mul(&sigma)?);
        let tau_pows = powers(&tau, n);
        let tn = scalar_sign(&tau_pows[n as usize - 1].mul(&tau)?);
        let negate = match (s2, tn) {
            (Some(a), Some(b)) if a == b => a,
            _ => return Err(domain("generator matrices must satisfy σ² = τⁿ = ±1")),
        };
        Ok(WeightModule {
            ring,
            n,
            weight: None,
            variant: if negate { Variant::PlusMinusOne } else { Variant::Projective },
            lambda: None,
            tau_pows,
            sigma,
            negate,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The weight `k`, `None` for generic modules.
    pub fn weight(&self) -> Option<u64> {
        self.weight
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    /// Whether the scalar `−1` acts as `−1`.
    pub fn negates(&self) -> bool {
        self.negate
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1 && self.sigma.is_identity() && self.tau_pows.get(1).is_none_or(|t| t.is_identity())
    }

    /// The image of `λ_n` in the coefficient ring (for `k > 2`).
    pub fn lambda(&self) -> Option<&R::Elem> {
        self.lambda.as_ref()
    }

    /// `ρ(g)` for `g = [[a,b],[c,d]]`: `(g·P)(X,Y) = P(dX − bY, −cX + aY)`.
    /// Columns are the images of `X^a Y^{k−2−a}`, `a = 0..k−2`. For
    /// `det g ≠ 1` this is the action through the adjugate.
    pub fn action_matrix(&self, g: &[R::Elem; 4]) -> Matrix<R> {
        let r = &self.ring;
        let m = match self.weight {
            Some(k) => (k - 2) as usize,
            None => panic!("action_matrix needs a polynomial module"),
        };
        let [a, b, c, d] = g;
        // coefficient vectors indexed by the exponent of X
        let p1 = vec![r.neg(b), d.clone()];
        let p2 = vec![a.clone(), r.neg(c)];
        let pow = |p: &Vec<R::Elem>, e: usize| {
            let mut acc = vec![r.one()];
            for _ in 0..e {
                acc = crate::poly::mul(r, &acc, p);
            }
            acc
        };
        let p1_pows: Vec<Vec<R::Elem>> = (0..=m).map(|e| pow(&p1, e)).collect();
        let p2_pows: Vec<Vec<R::Elem>> = (0..=m).map(|e| pow(&p2, e)).collect();
        let mut out = Matrix::zero(r.clone(), m + 1, m + 1);
        for col in 0..=m {
            let img = crate::poly::mul(r, &p1_pows[col], &p2_pows[m - col]);
            for (e, x) in img.into_iter().enumerate() {
                out.set(e, col, x);
            }
        }
        out
    }

    /// `ρ(g)` for a matrix over `Z[λ_n]` (entries as coefficient vectors in
    /// powers of `λ`).
    pub fn action_of_lambda_matrix(&self, g: &[Entry; 4]) -> Result<Matrix<R>> {
        let lam = self.lambda.clone();
        let r = &self.ring;
        let map = |e: &Entry| -> Result<R::Elem> {
            let mut acc = r.zero();
            let mut p = r.one();
            for (i, c) in e.iter().enumerate() {
                if !c.is_integer() {
                    return Err(internal("non-integral entry in Z[λ]"));
                }
                if i > 0 {
                    let l = lam.clone().ok_or_else(|| Error::UnsupportedRing("no image of λ".into()))?;
                    p = r.mul(&p, &l);
                }
                acc = r.add(&acc, &r.mul(&r.from_integer(&c.to_integer()), &p));
            }
            Ok(acc)
        };
        let m = [map(&g[0])?, map(&g[1])?, map(&g[2])?, map(&g[3])?];
        Ok(self.action_matrix(&m))
    }

    /// `ρ` of the letter-wise lift of a word.
    pub fn rho_word(&self, word: &[Letter]) -> Matrix<R> {
        let mut acc = Matrix::identity(self.ring.clone(), self.dim());
        for &l in word {
            acc = acc.mul(self.rho_letter(l)).expect("square");
        }
        acc
    }

    /// `ρ` of the inverse of the letter-wise lift of a word.
    pub fn rho_word_inverse(&self, word: &[Letter]) -> Matrix<R> {
        let mut acc = Matrix::identity(self.ring.clone(), self.dim());
        let mut flips = 0;
        for &l in word.iter().rev() {
            // σ̃⁻¹ = −σ̃, τ̃^{−k} = −τ̃^{n−k}
            let inv = match l {
                Letter::Sigma => Letter::Sigma,
                Letter::Tau(k) => Letter::Tau(self.n - k % self.n),
            };
            flips += 1;
            acc = acc.mul(self.rho_letter(inv)).expect("square");
        }
        if self.negate && flips % 2 == 1 {
            acc.neg()
        } else {
            acc
        }
    }

    pub fn rho_letter(&self, l: Letter) -> &Matrix<R> {
        match l {
            Letter::Sigma => &self.sigma,
            Letter::Tau(k) => &self.tau_pows[(k % self.n) as usize],
        }
    }

    /// `ρ` of the lift of a group element.
    pub fn rho_element(&self, g: &GroupElement) -> Matrix<R> {
        self.rho_word(g.word())
    }

    /// Matrix of `N_g = 1 + g + … + g^{m−1}` for `ρ(g)` of order `m`.
    pub fn norm_element_matrix(&self, rho_g: &Matrix<R>, m: u64) -> Result<Matrix<R>> {
        if m == 0 || !rho_g.pow(m)?.is_identity() {
            return Err(domain(format!("the element does not act with order dividing {m}")));
        }
        let mut acc = Matrix::zero(self.ring.clone(), self.dim(), self.dim());
        let mut p = Matrix::identity(self.ring.clone(), self.dim());
        for _ in 0..m {
            acc = acc.add(&p)?;
            p = p.mul(rho_g)?;
        }
        Ok(acc)
    }

    /// `V^H / N_H V` for `H` generated by an element acting by `rho_g` with
    /// order `m`.
    pub fn local_term(&self, rho_g: &Matrix<R>, m: u64) -> Result<LocalTerm<R>> {
        let norm = self.norm_element_matrix(rho_g, m)?;
        let id = Matrix::identity(self.ring.clone(), self.dim());
        let invariants = kernel(&rho_g.sub(&id)?)?;
        let images = norm.column_vectors();
        let quotient = QuotientModule::subquotient(self.ring.clone(), self.dim(), &invariants, &images)?;
        if quotient.sub_rank() != invariants_rank(&self.ring, self.dim(), &invariants)? {
            return Err(internal("norm image not contained in the invariants"));
        }
        Ok(LocalTerm { order: m, quotient })
    }

    /// Local term at the stabilizer generated by a group element of finite
    /// order (the lift is used as given).
    pub fn local_term_of(&self, g: &GroupElement) -> Result<LocalTerm<R>> {
        let m = g
            .order()
            .ok_or_else(|| domain(format!("{} has infinite order", g.render_word())))?;
        self.local_term(&self.rho_element(g), m)
    }
}

fn invariants_rank<R: Ring>(r: &R, dim: usize, gens: &[Vec<R::Elem>]) -> Result<usize> {
    Ok(crate::linalg::Echelon::from_rows(r.clone(), dim, gens)?.rank())
}

fn powers<R: Ring>(m: &Matrix<R>, n: u64) -> Vec<Matrix<R>> {
    let mut out = vec![Matrix::identity(m.ring().clone(), m.rows())];
    for j in 1..n as usize {
        let next = out[j - 1].mul(m).expect("square");
        out.push(next);
    }
    out
}

/// `V^H / N_H V` at a finite cyclic stabilizer of order `order`.
#[derive(Debug, Clone)]
pub struct LocalTerm<R: Ring> {
    pub order: u64,
    pub quotient: QuotientModule<R>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField, Rationals};
    use crate::triangle::TriangleGroup;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zm(rows: &[&[i64]]) -> Matrix<Integers> {
        Matrix::from_i64_rows(Integers, rows).unwrap()
    }

    #[test]
    fn sigma_on_quadratics() {
        let w = WeightModule::new(Integers, 3, 4, Variant::Projective).unwrap();
        let g = [0, -1, 1, 0].map(BigInt::from);
        // basis Y², XY, X²: σ·Y² = X², σ·XY = −XY, σ·X² = Y²
        assert_eq!(w.action_matrix(&g), zm(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]));
        assert!(w.action_matrix(&[1, 0, 0, 1].map(BigInt::from)).is_identity());
    }

    #[test]
    fn minus_one_in_odd_weight() {
        assert!(WeightModule::new(Integers, 3, 3, Variant::Projective).is_err());
        let w = WeightModule::new(Integers, 3, 3, Variant::PlusMinusOne).unwrap();
        let m = w.action_matrix(&[-1, 0, 0, -1].map(BigInt::from));
        assert_eq!(m, zm(&[&[-1, 0], &[0, -1]]));
        assert!(w.negates());
    }

    #[test]
    fn norm_elements() {
        let w = WeightModule::trivial(Integers, 5).unwrap();
        let n = w.norm_element_matrix(w.rho_letter(Letter::Tau(1)), 5).unwrap();
        assert_eq!(n, zm(&[&[5]]));
        let w = WeightModule::new(Rationals, 3, 4, Variant::Projective).unwrap();
        let tau = w.rho_letter(Letter::Tau(1)).clone();
        let n = w.norm_element_matrix(&tau, 3).unwrap();
        assert_eq!(crate::linalg::rank(&n).unwrap(), 1);
        let id = Matrix::identity(Rationals, 3);
        assert!(n.mul(&id.sub(&tau).unwrap()).unwrap().is_zero());
        assert!(w.norm_element_matrix(&tau, 2).is_err());
    }

    #[test]
    fn local_terms_weight_two() {
        let g = TriangleGroup::new(3).unwrap();
        let wq = WeightModule::trivial(Rationals, 3).unwrap();
        assert!(wq.local_term_of(&g.sigma()).unwrap().quotient.is_zero_module());
        let wz = WeightModule::trivial(Integers, 3).unwrap();
        let lt = wz.local_term_of(&g.sigma()).unwrap();
        assert_eq!(lt.quotient.torsion_invariants(), vec![BigInt::from(2)]);
        assert_eq!(lt.quotient.rank(), 0);
        let w2 = WeightModule::trivial(PrimeField::new(2).unwrap(), 3).unwrap();
        assert_eq!(w2.local_term_of(&g.sigma()).unwrap().quotient.rank(), 1);
        assert!(wz.local_term_of(&g.t()).is_err());
    }

    #[test]
    fn lambda_in_weight_modules() {
        // Q has no square root of 2, F_7 does
        assert!(WeightModule::new(Rationals, 4, 4, Variant::Projective).is_err());
        let f7 = PrimeField::new(7).unwrap();
        let w = WeightModule::new(f7, 4, 4, Variant::Projective).unwrap();
        let t = w.rho_letter(Letter::Tau(1));
        assert!(t.pow(4).unwrap().is_identity());
        assert!(w.rho_letter(Letter::Sigma).pow(2).unwrap().is_identity());
        let q5 = lambda_ring(5).unwrap().field().unwrap();
        let w = WeightModule::new(q5, 5, 6, Variant::Projective).unwrap();
        assert!(w.rho_letter(Letter::Tau(1)).pow(5).unwrap().is_identity());
    }

    #[test]
    fn generic_module() {
        // sign representation of Δ_4: σ, τ ↦ −1
        let m = zm(&[&[-1]]);
        let w = WeightModule::from_generators(Integers, 4, m.clone(), m.clone()).unwrap();
        assert!(!w.negates());
        assert!(WeightModule::from_generators(Integers, 3, m.clone(), m).is_err());
    }

    proptest! {
        #[test]
        fn homomorphism_property(
            k in 2u64..8,
            a in proptest::collection::vec(-5i64..5, 4),
            b in proptest::collection::vec(-5i64..5, 4),
        ) {
            let w = WeightModule::new(Integers, 3, k + (k % 2), Variant::Projective).unwrap();
            let g = [a[0], a[1], a[2], a[3]].map(BigInt::from);
            let h = [b[0], b[1], b[2], b[3]].map(BigInt::from);
            let gh = [
                &g[0] * &h[0] + &g[1] * &h[2],
                &g[0] * &h[1] + &g[1] * &h[3],
                &g[2] * &h[0] + &g[3] * &h[2],
                &g[2] * &h[1] + &g[3] * &h[3],
            ];
            let lhs = w.action_matrix(&g).mul(&w.action_matrix(&h)).unwrap();
            prop_assert_eq!(lhs, w.action_matrix(&gh));
        }

        #[test]
        fn words_act_invertibly(
            word in proptest::collection::vec(prop_oneof![Just(Letter::Sigma), (1u64..3).prop_map(Letter::Tau)], 0..8),
        ) {
            let w = WeightModule::new(Integers, 3, 5, Variant::PlusMinusOne).unwrap();
            let g = TriangleGroup::new(3).unwrap().from_word(&word).unwrap();
            // the lift of an element is the letter-wise lift of its reduced word
            prop_assert_eq!(&w.rho_element(&g), &w.action_of_lambda_matrix(g.lift()).unwrap());
            let m = w.rho_word(&word);
            let inv = w.rho_word_inverse(&word);
            prop_assert!(m.mul(&inv).unwrap().is_identity());
        }
    }
}
