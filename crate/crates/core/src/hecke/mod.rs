//! Hecke and diamond operators on modular symbols for `Γ₀(N)` and `Γ₁(N)`,
//! with eigensystems and `q`-expansion coefficients.

mod eigen;

pub use eigen::{eigensystem, factor_in, EigenPiece, EigensystemReport, OpKey, PieceKind};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::congruence::{mat_apply, CongruenceKind, CongruenceSubgroup, Mat2, QPoint};
use crate::error::{domain, internal, Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, QuotientModule};
use crate::modsym::{mat_mul, word_matrix, ManinSpace};
use crate::ring::Ring;
use crate::weight::{Variant, WeightModule};

/// An operator as a matrix on the generators of a presentation
/// (columns are images).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeOperator<R: Ring> {
    pub key: OpKey,
    pub matrix: Matrix<R>,
}

/// `floor(k·μ/12) + 1` with `μ` the index in `PSL₂(Z)`.
pub fn sturm_bound(index: usize, k: u64) -> u64 {
    k * index as u64 / 12 + 1
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn primes_up_to(b: u64) -> Vec<u64> {
    (2..=b).filter(|&p| is_prime(p)).collect()
}

/// Modular symbols of weight `k` for a congruence subgroup.
#[derive(Debug, Clone)]
pub struct ModularSymbols<R: Ring> {
    group: CongruenceSubgroup,
    weight: u64,
    space: ManinSpace<R>,
    reps: Vec<Mat2>,
}

fn int_mat(v: [i64; 4]) -> Mat2 {
    v.map(BigInt::from)
}

impl<R: Ring> ModularSymbols<R> {
    /// Coefficients `Sym^{k−2}`; odd `k` needs a group without `−1`.
    pub fn new(group: &CongruenceSubgroup, ring: R, k: u64) -> Result<Self> {
        let variant = if k % 2 == 1 || group.kind() == CongruenceKind::Gamma1 {
            Variant::PlusMinusOne
        } else {
            Variant::Projective
        };
        let w = WeightModule::new(ring, 3, k, variant)?;
        let space = ManinSpace::new(group.subgroup(), &w)?;
        let m = space.module();
        let reps = m
            .coset_rep_words()
            .iter()
            .enumerate()
            .map(|(i, wd)| {
                let g = word_matrix(wd);
                if m.rep_sign(i) {
                    g.map(|x| -x)
                } else {
                    g
                }
            })
            .collect();
        Ok(ModularSymbols {
            group: group.clone(),
            weight: k,
            space,
            reps,
        })
    }

    pub fn group(&self) -> &CongruenceSubgroup {
        &self.group
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn space(&self) -> &ManinSpace<R> {
        &self.space
    }

    pub fn ring(&self) -> &R {
        self.space.ring()
    }

    pub fn sturm_bound(&self) -> u64 {
        sturm_bound(self.group.index(), self.weight)
    }

    /// Right coset representatives of `Γ\Δ_p Γ`: `[[1,j],[0,p]]` and, for
    /// `p ∤ N`, `σ_p·[[p,0],[0,1]]` with `σ_p ≡ [[p⁻¹,0],[0,p]] mod N`.
    pub fn hecke_representatives(&self, p: u64) -> Result<Vec<Mat2>> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        let n = self.group.level();
        let mut out: Vec<Mat2> = (0..p as i64).map(|j| int_mat([1, j, 0, p as i64])).collect();
        if !n.is_multiple_of(p) {
            let sigma = gamma0_lift(n, p)?;
            out.push(mat_mul(&sigma, &int_mat([p as i64, 0, 0, 1])));
        }
        Ok(out)
    }

    /// Image of the basis symbol `R_i ⊗ e_a` under `Σ δ`.
    fn basis_image(&self, mats: &[(Mat2, Matrix<R>)], j: usize) -> Result<SparseVec<R::Elem>> {
        let r = self.ring();
        let d = self.space.module().weight_module().dim();
        let (i, a) = (j / d, j % d);
        let mut acc: SparseVec<R::Elem> = Vec::new();
        for (delta, rho) in mats {
            let h = mat_mul(delta, &self.reps[i]);
            let v = rho.column(a);
            let alpha = mat_apply(&h, &QPoint::zero());
            let beta = mat_apply(&h, &QPoint::Infinity);
            let x = self.space.symbol_sparse(&v, &alpha, &beta)?;
            acc = sparse::combine(r, &r.one(), &acc, &r.one(), &x);
        }
        Ok(acc)
    }

    fn apply(
        &self,
        mats: &[(Mat2, Matrix<R>)],
        v: &SparseVec<R::Elem>,
        cache: &mut HashMap<usize, SparseVec<R::Elem>>,
    ) -> Result<SparseVec<R::Elem>> {
        let r = self.ring();
        let mut acc: SparseVec<R::Elem> = Vec::new();
        for (j, c) in v {
            if !cache.contains_key(j) {
                cache.insert(*j, self.basis_image(mats, *j)?);
            }
            acc = sparse::combine(r, &r.one(), &acc, c, &cache[j]);
        }
        Ok(acc)
    }

    /// The operator `x ↦ Σ δ·x` on the generators of `q`, a subquotient of
    /// the induced module stable under it.
    pub fn operator_on(&self, q: &QuotientModule<R>, mats: &[Mat2]) -> Result<Matrix<R>> {
        let g = q.num_generators();
        let w = self.space.module().weight_module();
        let r = self.ring();
        let mats: Vec<(Mat2, Matrix<R>)> = mats
            .iter()
            .map(|m| (m.clone(), w.action_matrix(&m.clone().map(|x| r.from_integer(&x)))))
            .collect();
        let mut cache = HashMap::new();
        let mut m = Matrix::zero(self.ring().clone(), g, g);
        for j in 0..g {
            let img = self.apply(&mats, &q.generator_sparse(j), &mut cache)?;
            let c = q
                .coordinates_sparse(&img)
                .ok_or_else(|| internal("subspace not stable under the operator"))?;
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// `T_p` (or `U_p` for `p | N`) on the whole space.
    pub fn hecke_matrix(&self, p: u64) -> Result<HeckeOperator<R>> {
        self.hecke_on(self.space.presentation(), p)
    }

    /// `T_p` on a stable subquotient such as the cuspidal subspace.
    pub fn hecke_on(&self, q: &QuotientModule<R>, p: u64) -> Result<HeckeOperator<R>> {
        let mats = self.hecke_representatives(p)?;
        Ok(HeckeOperator {
            key: OpKey::Hecke(p),
            matrix: self.operator_on(q, &mats)?,
        })
    }

    /// The diamond operator `⟨d⟩` (trivial on `Γ₀(N)`).
    pub fn diamond_on(&self, q: &QuotientModule<R>, d: u64) -> Result<HeckeOperator<R>> {
        let n = self.group.level();
        if d.gcd(&n) != 1 {
            return Err(domain(format!("diamond operator ⟨{d}⟩ needs gcd(d, {n}) = 1")));
        }
        let g = gamma0_lift(n, d)?;
        Ok(HeckeOperator {
            key: OpKey::Diamond(d % n.max(1)),
            matrix: self.operator_on(q, &[g])?,
        })
    }

    pub fn cuspidal(&self) -> Result<QuotientModule<R>> {
        self.space.cuspidal()
    }

    /// Eigensystem of the cuspidal subquotient under `T_p` for primes
    /// `p ≤ max(bound, Sturm bound)`, with `⟨p⟩` for `Γ₁(N)` so the
    /// coefficients `a_1, …, a_bound` carry the nebentypus.
    pub fn cuspidal_eigensystem(&self, bound: u64) -> Result<EigensystemReport<R::Elem>> {
        let cusp = self.cuspidal()?;
        let n = self.group.level();
        let primes = primes_up_to(bound.max(self.sturm_bound()));
        let mut ops = Vec::new();
        for &p in &primes {
            let op = self.hecke_on(&cusp, p)?;
            ops.push((op.key, op.matrix));
        }
        if self.group.kind() == CongruenceKind::Gamma1 && n > 2 {
            for &p in primes.iter().filter(|&&p| !n.is_multiple_of(p)) {
                let op = self.diamond_on(&cusp, p)?;
                if !ops.iter().any(|(k, _)| *k == op.key) {
                    ops.push((op.key, op.matrix));
                }
            }
        }
        eigensystem(&ops, self.weight, n, bound)
    }
}

/// `[[m, n], [N, d]] ∈ Γ₀(N)` with `m·d − n·N = 1`.
fn gamma0_lift(level: u64, d: u64) -> Result<Mat2> {
    let (nn, dd) = (BigInt::from(level), BigInt::from(d));
    let e = dd.extended_gcd(&nn);
    if !e.gcd.is_one() {
        return Err(Error::Domain(format!("{d} is not a unit modulo {level}")));
    }
    // d·x + N·y = 1, so m = x, n = −y
    let g = [e.x, -e.y, nn, dd];
    debug_assert!(crate::modsym::is_sl2(&g));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::charpoly;
    use crate::ring::Rationals;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(1, 12), 2);
        assert_eq!(sturm_bound(12, 2), 3);
        assert_eq!(sturm_bound(12, 4), 5);
    }

    #[test]
    fn level_one_weight_12() {
        let g = CongruenceSubgroup::gamma0(1).unwrap();
        let ms = ModularSymbols::new(&g, Rationals, 12).unwrap();
        let cusp = ms.cuspidal().unwrap();
        let t2 = ms.hecke_on(&cusp, 2).unwrap();
        // (x + 24)²
        assert_eq!(charpoly(&t2.matrix).unwrap(), q(&[576, 48, 1]));
        let t3 = ms.hecke_on(&cusp, 3).unwrap();
        assert_eq!(charpoly(&t3.matrix).unwrap(), q(&[252 * 252, -504, 1]));
    }

    #[test]
    fn gamma0_11() {
        let g = CongruenceSubgroup::gamma0(11).unwrap();
        let ms = ModularSymbols::new(&g, Rationals, 2).unwrap();
        let cusp = ms.cuspidal().unwrap();
        assert_eq!(charpoly(&ms.hecke_on(&cusp, 2).unwrap().matrix).unwrap(), q(&[4, 4, 1]));
        assert_eq!(charpoly(&ms.hecke_on(&cusp, 3).unwrap().matrix).unwrap(), q(&[1, 2, 1]));
        assert_eq!(charpoly(&ms.hecke_on(&cusp, 11).unwrap().matrix).unwrap(), q(&[1, -2, 1]));
        // Eisenstein eigenvalue p + 1 on the full space
        let full = charpoly(&ms.hecke_matrix(2).unwrap().matrix).unwrap();
        assert_eq!(full, crate::poly::mul(&Rationals, &q(&[4, 4, 1]), &q(&[-3, 1])));
    }

    #[test]
    fn operators_commute_gamma1() {
        let g = CongruenceSubgroup::gamma1(7).unwrap();
        let ms = ModularSymbols::new(&g, Rationals, 3).unwrap();
        let pres = ms.space().presentation().clone();
        let t2 = ms.hecke_on(&pres, 2).unwrap().matrix;
        let t3 = ms.hecke_on(&pres, 3).unwrap().matrix;
        let d3 = ms.diamond_on(&pres, 3).unwrap().matrix;
        assert_eq!(t2.mul(&t3).unwrap(), t3.mul(&t2).unwrap());
        assert_eq!(t2.mul(&d3).unwrap(), d3.mul(&t2).unwrap());
        assert!(d3.pow(6).unwrap().is_identity());
    }

    fn eigenforms(ms: &ModularSymbols<Rationals>, bound: u64) -> Vec<EigenPiece<BigRational>> {
        ms.cuspidal_eigensystem(bound).unwrap().pieces
    }

    #[test]
    fn q_expansions() {
        let g = CongruenceSubgroup::gamma0(11).unwrap();
        let pieces = eigenforms(&ModularSymbols::new(&g, Rationals, 2).unwrap(), 10);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].dim, 2);
        let PieceKind::Eigenform { coefficients, .. } = &pieces[0].kind else { panic!("not an eigenform") };
        assert_eq!(coefficients, &q(&[1, -2, -1, 2, 1, 2, -2, 0, -2, -2]));

        let g = CongruenceSubgroup::gamma0(1).unwrap();
        let pieces = eigenforms(&ModularSymbols::new(&g, Rationals, 12).unwrap(), 6);
        let PieceKind::Eigenform { coefficients, .. } = &pieces[0].kind else { panic!("not an eigenform") };
        assert_eq!(coefficients, &q(&[1, -24, 252, -1472, 4830, -6048]));
    }

    #[test]
    fn irrational_eigenvalues_reported() {
        // S_2(Γ₀(23)) has a_2 = (−1 ± √5)/2
        let g = CongruenceSubgroup::gamma0(23).unwrap();
        let pieces = eigenforms(&ModularSymbols::new(&g, Rationals, 2).unwrap(), 3);
        assert_eq!(pieces.len(), 1);
        assert!(matches!(&pieces[0].kind, PieceKind::Irrational { factor, multiplicity: 2, .. } if factor == &q(&[-1, 1, 1])));
    }

    #[test]
    fn gamma0_lifts() {
        for n in 1..30u64 {
            for d in 1..30u64 {
                if d.gcd(&n) == 1 {
                    let g = gamma0_lift(n, d).unwrap();
                    assert!(crate::modsym::is_sl2(&g));
                }
            }
        }
    }
}
