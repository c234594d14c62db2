//! First cohomology of `Γ ⊆ Δ_n` with coefficients in `V`, computed on
//! `M = Coind_Γ^{Δ_n} V` through the free product `Δ_n = ⟨σ⟩ * ⟨τ⟩`.

use crate::error::{domain, internal, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{induced_map, kernel, InducedMap, Matrix, QuotientModule};
use crate::modsym::{InducedModule, ManinSpace};
use crate::ring::Ring;
use crate::triangle::{cycles, Letter, SubgroupRep};
use crate::weight::WeightModule;

/// Which cohomology group a presentation stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    H1,
    H1Par,
    Boundary,
    Surface,
    SurfacePar,
}

#[derive(Debug, Clone)]
pub struct CohomologyPresentation<R: Ring> {
    pub flavor: Flavor,
    pub module: QuotientModule<R>,
    /// The exact sequence the presentation is read off from.
    pub provenance: &'static str,
}

impl<R: Ring> CohomologyPresentation<R> {
    /// Dimension over a field, free rank over `Z`.
    pub fn rank(&self) -> usize {
        self.module.rank()
    }
}

/// `H¹(⟨g⟩, M) = ker N_g / (1 − g)M` for `g` of order dividing `m`.
pub fn h1_cyclic<R: Ring>(g: &Matrix<R>, m: u64) -> Result<QuotientModule<R>> {
    if !g.is_square() || m == 0 {
        return Err(domain("cyclic action needs a square matrix and positive order"));
    }
    if !g.pow(m)?.is_identity() {
        return Err(domain(format!("action matrix does not have order dividing {m}")));
    }
    let n = g.rows();
    let id = Matrix::identity(g.ring().clone(), n);
    let mut norm = id.clone();
    let mut p = id.clone();
    for _ in 1..m {
        p = p.mul(g)?;
        norm = norm.add(&p)?;
    }
    let sub = kernel(&norm)?;
    QuotientModule::subquotient(g.ring().clone(), n, &sub, &id.sub(g)?.column_vectors())
}

/// The local term `V^{Γ_y} / N V` at one elliptic point.
#[derive(Debug, Clone)]
pub struct LocalTermReport<R: Ring> {
    pub coset: usize,
    pub order: u64,
    pub module: QuotientModule<R>,
}

/// The natural map from the Manin presentation onto the surface
/// presentation, with its kernel explained by the elliptic local terms.
#[derive(Debug, Clone)]
pub struct Comparison<R: Ring> {
    pub map: InducedMap<R>,
    pub local_terms: Vec<LocalTermReport<R>>,
    /// `coker(M^G → ⊕ local terms)`, which is isomorphic to the kernel.
    pub local_cokernel: QuotientModule<R>,
}

impl<R: Ring> Comparison<R> {
    pub fn kernel_dim(&self) -> usize {
        self.map.kernel.num_generators()
    }

    pub fn local_total_dim(&self) -> usize {
        self.local_terms.iter().map(|t| t.module.num_generators()).sum()
    }

    pub fn local_net_dim(&self) -> usize {
        self.local_cokernel.num_generators()
    }

    /// Over a field: the comparison map is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.map.kernel.is_zero_module() && self.map.image.num_generators() == self.map.matrix.rows()
    }
}

/// Terms of `0 → M^G → M^σ ⊕ M^τ → M → H¹(G,M) → H¹(σ,M) ⊕ H¹(τ,M) → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MayerVietoris {
    /// `[M^G, M^σ ⊕ M^τ, M, H¹(G,M), H¹(σ,M), H¹(τ,M)]` as generator counts.
    pub dims: [usize; 6],
    /// Kernel equals image at every spot.
    pub exact: bool,
}

impl MayerVietoris {
    pub fn alternating_sum(&self) -> i64 {
        let d = self.dims.map(|x| x as i64);
        d[0] - d[1] + d[2] - d[3] + d[4] + d[5]
    }
}

/// Dense action matrices of one induced module, shared by all
/// cohomology computations.
#[derive(Debug, Clone)]
pub struct Cohomology<R: Ring> {
    module: InducedModule<R>,
    id: Matrix<R>,
    sigma: Matrix<R>,
    tau: Matrix<R>,
    t: Matrix<R>,
    norm_sigma: Matrix<R>,
    norm_tau: Matrix<R>,
}

impl<R: Ring> Cohomology<R> {
    pub fn new(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<Self> {
        Ok(Self::from_module(InducedModule::new(sub, w)?))
    }

    pub fn from_module(module: InducedModule<R>) -> Self {
        Cohomology {
            id: module.identity_operator().to_matrix(),
            sigma: module.left_sigma().to_matrix(),
            tau: module.left_tau().to_matrix(),
            t: module.left_t().to_matrix(),
            norm_sigma: module.norm_sigma().to_matrix(),
            norm_tau: module.norm_tau().to_matrix(),
            module,
        }
    }

    pub fn module(&self) -> &InducedModule<R> {
        &self.module
    }

    fn ring(&self) -> &R {
        self.module.ring()
    }

    fn n(&self) -> usize {
        self.module.rank()
    }

    fn one_minus(&self, g: &Matrix<R>) -> Result<Matrix<R>> {
        self.id.sub(g)
    }

    /// `M^G = ker(1 − σ) ∩ ker(1 − τ)`.
    pub fn invariants(&self) -> Result<Vec<Vec<R::Elem>>> {
        kernel(&Matrix::vstack(&[&self.one_minus(&self.sigma)?, &self.one_minus(&self.tau)?])?)
    }

    fn pair(&self, a: Option<&[R::Elem]>, b: Option<&[R::Elem]>) -> Vec<R::Elem> {
        let z = vec![self.ring().zero(); self.n()];
        let mut v = a.map_or(z.clone(), <[_]>::to_vec);
        v.extend(b.map_or(z, <[_]>::to_vec));
        v
    }

    fn pairs_left(&self, xs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        xs.iter().map(|x| self.pair(Some(x), None)).collect()
    }

    fn pairs_right(&self, xs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        xs.iter().map(|x| self.pair(None, Some(x))).collect()
    }

    /// `ker N_σ × ker N_τ` modulo `{((1−σ)m, (1−τ)m)}`.
    pub fn h1(&self) -> Result<CohomologyPresentation<R>> {
        let mut sub = self.pairs_left(&kernel(&self.norm_sigma)?);
        sub.extend(self.pairs_right(&kernel(&self.norm_tau)?));
        let rel = Matrix::vstack(&[&self.one_minus(&self.sigma)?, &self.one_minus(&self.tau)?])?.column_vectors();
        Ok(CohomologyPresentation {
            flavor: Flavor::H1,
            module: QuotientModule::subquotient(self.ring().clone(), 2 * self.n(), &sub, &rel)?,
            provenance: "0 → M^G → M → ker N_σ × ker N_τ → H¹(G, M) → 0",
        })
    }

    /// `(ker N_σ ∩ ker N_τ) / (σ − 1)M^{⟨T⟩}`.
    pub fn h1_par(&self) -> Result<CohomologyPresentation<R>> {
        let sub = kernel(&Matrix::vstack(&[&self.norm_sigma, &self.norm_tau])?)?;
        let fixed_t = kernel(&self.one_minus(&self.t)?)?;
        let s_minus = self.sigma.sub(&self.id)?;
        let rel = fixed_t
            .iter()
            .map(|v| s_minus.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyPresentation {
            flavor: Flavor::H1Par,
            module: QuotientModule::subquotient(self.ring().clone(), self.n(), &sub, &rel)?,
            provenance: "0 → M^T / M^G → ker N_σ ∩ ker N_τ → H¹_par(G, M) → 0",
        })
    }

    /// `M / (1 − T)M`.
    pub fn boundary(&self) -> Result<CohomologyPresentation<R>> {
        let rel = self.one_minus(&self.t)?.column_vectors();
        Ok(CohomologyPresentation {
            flavor: Flavor::Boundary,
            module: QuotientModule::presentation(self.ring().clone(), self.n(), &rel)?,
            provenance: "H¹(⟨T⟩, M) = M / (1 − T)M",
        })
    }

    /// `M / (M^σ + M^τ)`.
    pub fn surface_h1(&self) -> Result<CohomologyPresentation<R>> {
        let mut rel = kernel(&self.one_minus(&self.sigma)?)?;
        rel.extend(kernel(&self.one_minus(&self.tau)?)?);
        Ok(CohomologyPresentation {
            flavor: Flavor::Surface,
            module: QuotientModule::presentation(self.ring().clone(), self.n(), &rel)?,
            provenance: "H¹(Y_Γ) = M / (M^σ + M^τ)",
        })
    }

    /// Kernel of `1 − σ` from the surface presentation into `M / (1 − T)M`.
    pub fn surface_h1_par(&self) -> Result<CohomologyPresentation<R>> {
        let source = self.surface_h1()?.module;
        let target = self.boundary()?.module;
        let map = induced_map(&source, &target, &self.one_minus(&self.sigma)?)?;
        Ok(CohomologyPresentation {
            flavor: Flavor::SurfacePar,
            module: map.kernel,
            provenance: "H¹_par(Y_Γ) = ker(M / (M^σ + M^τ) → M / (1 − T)M)",
        })
    }

    /// Elliptic points as `(coset, order, stabilizer action on V)`: the
    /// diagonal blocks of `σ` at fixed cosets and of `τ^ℓ` at short cycles.
    fn elliptic_blocks(&self) -> Result<Vec<(usize, u64, Matrix<R>)>> {
        let sub = self.module.subgroup();
        let n = sub.n();
        let mut out = Vec::new();
        for i in 0..sub.index() {
            if sub.s()[i] == i {
                let b = self.module.left_sigma().block(i, i).ok_or_else(|| internal("missing σ block"))?;
                out.push((i, 2, b.clone()));
            }
        }
        for c in cycles(sub.t()) {
            let l = c.len() as u64;
            if l < n {
                let op = self.module.left_word(&[Letter::Tau(l)]);
                let b = op.block(c[0], c[0]).ok_or_else(|| internal("missing τ block"))?;
                out.push((c[0], n / l, b.clone()));
            }
        }
        Ok(out)
    }

    /// The comparison map from the Manin presentation to the surface
    /// presentation together with the elliptic local terms.
    pub fn comparison(&self, manin: &ManinSpace<R>) -> Result<Comparison<R>> {
        let surface = self.surface_h1()?.module;
        let map = induced_map(manin.presentation(), &surface, &self.id)?;
        let w = self.module.weight_module();
        let d = w.dim();
        let mut local_terms = Vec::new();
        let blocks = self.elliptic_blocks()?;
        let outer = blocks.len() * d;
        let mut sub_all: Vec<SparseVec<R::Elem>> = Vec::new();
        let mut rel_all: Vec<SparseVec<R::Elem>> = Vec::new();
        let shift = |v: &[R::Elem], e: usize| -> SparseVec<R::Elem> {
            sparse::from_dense(self.ring(), v).into_iter().map(|(j, x)| (j + e * d, x)).collect()
        };
        for (e, (coset, order, b)) in blocks.iter().enumerate() {
            let term = w.local_term(b, *order)?;
            sub_all.extend(term.quotient.sub_basis().iter().map(|v| shift(v, e)));
            rel_all.extend(term.quotient.relation_basis().iter().map(|v| shift(v, e)));
            local_terms.push(LocalTermReport {
                coset: *coset,
                order: *order,
                module: term.quotient,
            });
        }
        for f in self.invariants()? {
            let mut v: SparseVec<R::Elem> = Vec::new();
            for (e, (coset, _, _)) in blocks.iter().enumerate() {
                v.extend(shift(&f[coset * d..(coset + 1) * d], e));
            }
            rel_all.push(v);
        }
        let local_cokernel = QuotientModule::from_sparse_parts(self.ring().clone(), outer, sub_all, rel_all)?;
        Ok(Comparison {
            map,
            local_terms,
            local_cokernel,
        })
    }

    /// All terms of the Mayer–Vietoris sequence and whether it is exact.
    pub fn mayer_vietoris(&self) -> Result<MayerVietoris> {
        let r = self.ring().clone();
        let n = self.n();
        let one_s = self.one_minus(&self.sigma)?;
        let one_t = self.one_minus(&self.tau)?;
        let neg_id = self.id.neg();

        let t0 = QuotientModule::subquotient(r.clone(), n, &self.invariants()?, &[])?;
        let mut s1 = self.pairs_left(&kernel(&one_s)?);
        s1.extend(self.pairs_right(&kernel(&one_t)?));
        let t1 = QuotientModule::subquotient(r.clone(), 2 * n, &s1, &[])?;
        let t2 = QuotientModule::presentation(r.clone(), n, &[])?;
        let t3 = self.h1()?.module;
        let mut s4 = self.pairs_left(&kernel(&self.norm_sigma)?);
        s4.extend(self.pairs_right(&kernel(&self.norm_tau)?));
        let mut l4 = self.pairs_left(&one_s.neg().column_vectors());
        l4.extend(self.pairs_right(&one_t.neg().column_vectors()));
        let t4 = QuotientModule::subquotient(r.clone(), 2 * n, &s4, &l4)?;

        let f0 = Matrix::vstack(&[&self.id, &self.id])?;
        let f1 = Matrix::hstack(&[&self.id, &neg_id])?;
        let f2 = Matrix::vstack(&[&Matrix::zero(r.clone(), n, n), &one_t.neg()])?;
        let f3 = Matrix::identity(r.clone(), 2 * n);
        let m0 = induced_map(&t0, &t1, &f0)?;
        let m1 = induced_map(&t1, &t2, &f1)?;
        let m2 = induced_map(&t2, &t3, &f2)?;
        let m3 = induced_map(&t3, &t4, &f3)?;

        let exact = m0.kernel.is_zero_module()
            && m1.kernel.same_subquotient(&m0.image)?
            && m2.kernel.same_subquotient(&m1.image)?
            && m3.kernel.same_subquotient(&m2.image)?
            && m3.image.same_subquotient(&t4)?;

        let h_sigma = h1_cyclic(&self.sigma, 2)?;
        let h_tau = h1_cyclic(&self.tau, self.module.subgroup().n())?;
        Ok(MayerVietoris {
            dims: [
                t0.num_generators(),
                t1.num_generators(),
                t2.num_generators(),
                t3.num_generators(),
                h_sigma.num_generators(),
                h_tau.num_generators(),
            ],
            exact,
        })
    }

    /// Both sides of `dim H¹_par = dim(ker N_σ ∩ ker N_τ) − dim M^T + dim M^G`
    /// (meaningful over a field).
    pub fn parabolic_identity(&self) -> Result<(usize, usize)> {
        let lhs = self.h1_par()?.module.num_generators();
        let k = kernel(&Matrix::vstack(&[&self.norm_sigma, &self.norm_tau])?)?.len();
        let mt = kernel(&self.one_minus(&self.t)?)?.len();
        let mg = self.invariants()?.len();
        Ok((lhs, k + mg - mt))
    }
}

pub fn h1<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<CohomologyPresentation<R>> {
    Cohomology::new(sub, w)?.h1()
}

pub fn h1_par<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<CohomologyPresentation<R>> {
    Cohomology::new(sub, w)?.h1_par()
}

pub fn boundary_cohomology<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<CohomologyPresentation<R>> {
    Cohomology::new(sub, w)?.boundary()
}

pub fn surface_h1<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<CohomologyPresentation<R>> {
    Cohomology::new(sub, w)?.surface_h1()
}

pub fn surface_h1_par<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<CohomologyPresentation<R>> {
    Cohomology::new(sub, w)?.surface_h1_par()
}

pub fn comparison_map<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<Comparison<R>> {
    let manin = ManinSpace::new(sub, w)?;
    Cohomology::from_module(manin.module().clone()).comparison(&manin)
}

pub fn mayer_vietoris_defect<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<MayerVietoris> {
    Cohomology::new(sub, w)?.mayer_vietoris()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::CongruenceSubgroup;
    use crate::ring::{Integers, PrimeField, Rationals};
    use crate::weight::Variant;
    use rand::SeedableRng;

    #[test]
    fn cyclic_cohomology() {
        let q = Matrix::identity(Rationals, 1);
        assert_eq!(h1_cyclic(&q, 3).unwrap().rank(), 0);
        let f2 = PrimeField::new(2).unwrap();
        let one = Matrix::identity(f2, 1);
        assert_eq!(h1_cyclic(&one, 2).unwrap().rank(), 1);
        let swap = Matrix::from_i64_rows(f2, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(h1_cyclic(&swap, 2).unwrap().rank(), 0);
        let swap_q = Matrix::from_i64_rows(Rationals, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(h1_cyclic(&swap_q, 2).unwrap().rank(), 0);
        assert!(h1_cyclic(&swap_q, 3).is_err());
    }

    #[test]
    fn full_group_small_cases() {
        let sub = SubgroupRep::full(3).unwrap();
        let wq = WeightModule::trivial(Rationals, 3).unwrap();
        let c = Cohomology::new(&sub, &wq).unwrap();
        assert_eq!(c.h1().unwrap().rank(), 0);
        assert_eq!(c.boundary().unwrap().rank(), 1);
        let mv = c.mayer_vietoris().unwrap();
        assert_eq!(mv.dims, [1, 2, 1, 0, 0, 0]);
        assert!(mv.exact);

        let f2 = PrimeField::new(2).unwrap();
        let w2 = WeightModule::trivial(f2, 3).unwrap();
        let c = Cohomology::new(&sub, &w2).unwrap();
        assert_eq!(c.h1().unwrap().module.num_generators(), 1);
        assert_eq!(c.h1_par().unwrap().module.num_generators(), 0);
        let mv = c.mayer_vietoris().unwrap();
        assert_eq!(mv.dims, [1, 2, 1, 1, 1, 0]);
        assert!(mv.exact);
        assert_eq!(mv.alternating_sum(), 0);
    }

    #[test]
    fn delta4_characteristic_two() {
        let sub = SubgroupRep::full(4).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let w = WeightModule::trivial(f2, 4).unwrap();
        let manin = ManinSpace::new(&sub, &w).unwrap();
        assert_eq!(manin.presentation().num_generators(), 1);
        let c = Cohomology::new(&sub, &w).unwrap();
        assert_eq!(c.surface_h1().unwrap().module.num_generators(), 0);
        let cmp = c.comparison(&manin).unwrap();
        assert_eq!(cmp.kernel_dim(), 1);
        assert_eq!(cmp.local_total_dim(), 2);
        assert_eq!(cmp.local_net_dim(), 1);
    }

    #[test]
    fn gamma0_11() {
        let g = CongruenceSubgroup::gamma0(11).unwrap();
        let w = WeightModule::new(Rationals, 3, 2, Variant::Projective).unwrap();
        let c = Cohomology::new(g.subgroup(), &w).unwrap();
        assert_eq!(c.h1().unwrap().rank(), 3);
        assert_eq!(c.h1_par().unwrap().rank(), 2);
        assert_eq!(c.boundary().unwrap().rank(), 2);
        assert_eq!(c.surface_h1().unwrap().rank(), 3);
        assert_eq!(c.surface_h1_par().unwrap().rank(), 2);
        let manin = ManinSpace::new(g.subgroup(), &w).unwrap();
        assert!(c.comparison(&manin).unwrap().is_isomorphism());
        let mv = c.mayer_vietoris().unwrap();
        assert!(mv.exact);
        assert_eq!((mv.dims[4], mv.dims[5]), (0, 0));
        let (a, b) = c.parabolic_identity().unwrap();
        assert_eq!(a, b);

        let wz = WeightModule::new(Integers, 3, 2, Variant::Projective).unwrap();
        let cz = Cohomology::new(g.subgroup(), &wz).unwrap();
        let mz = ManinSpace::new(g.subgroup(), &wz).unwrap();
        let cmp = cz.comparison(&mz).unwrap();
        assert_eq!(mz.rank(), cz.surface_h1().unwrap().rank());
        assert_eq!(cmp.map.matrix.cols(), mz.presentation().num_generators());
    }

    #[test]
    fn level_one_weight_12() {
        let g = CongruenceSubgroup::gamma0(1).unwrap();
        let w = WeightModule::new(Rationals, 3, 12, Variant::Projective).unwrap();
        assert_eq!(h1_par(g.subgroup(), &w).unwrap().rank(), 2);
    }

    #[test]
    fn random_subgroups_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..12 {
            let n = 3 + trial % 4;
            let sub = SubgroupRep::random_transitive(n, 12, &mut rng).unwrap();
            for p in [2, 3] {
                let w = WeightModule::trivial(PrimeField::new(p).unwrap(), n).unwrap();
                let c = Cohomology::new(&sub, &w).unwrap();
                let mv = c.mayer_vietoris().unwrap();
                assert!(mv.exact);
                assert_eq!(mv.alternating_sum(), 0);
                let (a, b) = c.parabolic_identity().unwrap();
                assert_eq!(a, b);
                let manin = ManinSpace::new(&sub, &w).unwrap();
                let cmp = c.comparison(&manin).unwrap();
                assert_eq!(cmp.kernel_dim(), cmp.local_net_dim());
            }
        }
    }

    #[test]
    fn left_and_right_invariants_agree() {
        let g = CongruenceSubgroup::gamma0(6).unwrap();
        let w = WeightModule::new(Rationals, 3, 4, Variant::Projective).unwrap();
        let m = InducedModule::new(g.subgroup(), &w).unwrap();
        let id = m.identity_operator();
        let left = kernel(&id.sub(m.left_sigma()).to_matrix()).unwrap().len();
        let right = kernel(&id.sub(&m.right_letter(Letter::Sigma)).to_matrix()).unwrap().len();
        assert_eq!(left, right);
    }
}
