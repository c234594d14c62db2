//! Modular symbols `M_R(Γ, V)` via the Manin presentation of the induced
//! module, with the boundary map to the cusps.

mod convert;
mod induced;

pub use convert::sl2z_word;
pub(crate) use convert::{is_sl2, mat_mul, word_matrix};
pub use induced::{BlockOperator, InducedModule};

use crate::congruence::{continued_fraction_path, Mat2, PathStep, QPoint};
use crate::error::{domain, shape, Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{induced_map, InducedMap, QuotientModule};
use crate::ring::{Ring, RingKind};
use crate::triangle::SubgroupRep;
use crate::weight::WeightModule;

/// `M / (N_σ M + N_τ M)` for `M` the induced module.
#[derive(Debug, Clone)]
pub struct ManinSpace<R: Ring> {
    module: InducedModule<R>,
    presentation: QuotientModule<R>,
}

/// The boundary module `M / (1 − T)M` and the boundary map into it.
#[derive(Debug, Clone)]
pub struct Boundary<R: Ring> {
    pub module: QuotientModule<R>,
    pub map: InducedMap<R>,
}

/// Builds the Manin presentation for `Γ` with coefficients `V`.
pub fn manin_space<R: Ring>(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<ManinSpace<R>> {
    ManinSpace::new(sub, w)
}

impl<R: Ring> ManinSpace<R> {
    pub fn new(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<Self> {
        let module = InducedModule::new(sub, w)?;
        let relations: Vec<SparseVec<R::Elem>> = module
            .norm_sigma()
            .sparse_columns()
            .into_iter()
            .chain(module.norm_tau().sparse_columns())
            .filter(|v| !v.is_empty())
            .collect();
        let presentation = QuotientModule::from_parts(w.ring().clone(), module.rank(), None, relations)?;
        Ok(ManinSpace { module, presentation })
    }

    pub fn module(&self) -> &InducedModule<R> {
        &self.module
    }

    pub fn ring(&self) -> &R {
        self.module.ring()
    }

    pub fn presentation(&self) -> &QuotientModule<R> {
        &self.presentation
    }

    /// Free rank of the space.
    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    /// Invariant factors of the torsion part (integers only).
    pub fn torsion_invariants(&self) -> Result<Vec<R::Elem>> {
        torsion_invariants(&self.presentation)
    }

    /// The boundary module and the map `{g0, g∞} ⊗ v ↦ [g∞]⊗v − [g0]⊗v`,
    /// which is `1 − σ` on the induced module.
    pub fn boundary(&self) -> Result<Boundary<R>> {
        let m = &self.module;
        let relations: Vec<SparseVec<R::Elem>> = m
            .identity_operator()
            .sub(&m.left_t())
            .sparse_columns()
            .into_iter()
            .filter(|v| !v.is_empty())
            .collect();
        let module = QuotientModule::from_parts(self.ring().clone(), m.rank(), None, relations)?;
        let a = m.identity_operator().sub(m.left_sigma()).to_matrix();
        let map = induced_map(&self.presentation, &module, &a)?;
        Ok(Boundary { module, map })
    }

    /// Cuspidal symbols: the kernel of the boundary map.
    pub fn cuspidal(&self) -> Result<QuotientModule<R>> {
        Ok(self.boundary()?.map.kernel)
    }

    /// Eisenstein part: the image of the boundary map.
    pub fn eisenstein(&self) -> Result<QuotientModule<R>> {
        Ok(self.boundary()?.map.image)
    }

    /// Induced-module vector of the symbol `v·{g0, g∞}` for `g ∈ SL₂(Z)`.
    pub(crate) fn unimodular_symbol(&self, g: &Mat2, v: &[R::Elem]) -> Result<SparseVec<R::Elem>> {
        let m = &self.module;
        let w = m.weight_module();
        let r = self.ring();
        if m.subgroup().n() != 3 {
            return Err(Error::Unsupported(format!(
                "symbol conversion needs a subgroup of Δ₃, not Δ_{}",
                m.subgroup().n()
            )));
        }
        if !is_sl2(g) {
            return Err(domain("matrix is not in SL₂(Z)"));
        }
        let (word, neg) = sl2z_word(g);
        let (i, eps) = m.subgroup().act_word(0, &word);
        // ρ of the inverse of the word's lift; closed form when V = Sym^{k−2}
        let (inv, flip) = if w.weight().is_some() {
            let adj = [g[3].clone(), -&g[1], -&g[2], g[0].clone()].map(|x| r.from_integer(&x));
            (w.action_matrix(&adj), neg)
        } else {
            (w.rho_word_inverse(&word), false)
        };
        let mut val = m.rho_rep(i).mul_vec(&inv.mul_vec(v)?)?;
        if (eps ^ flip) && w.negates() {
            val = val.iter().map(|x| r.neg(x)).collect();
        }
        let d = w.dim();
        Ok(val
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !r.is_zero(x))
            .map(|(a, x)| (i * d + a, x))
            .collect())
    }

    /// Induced-module vector of `v·{α, β}`, through the continued fraction
    /// decomposition of the path.
    pub fn symbol_vector(&self, v: &[R::Elem], alpha: &QPoint, beta: &QPoint) -> Result<Vec<R::Elem>> {
        let s = self.symbol_sparse(v, alpha, beta)?;
        Ok(sparse::to_dense(self.ring(), &s, self.module.rank()))
    }

    pub(crate) fn symbol_sparse(&self, v: &[R::Elem], alpha: &QPoint, beta: &QPoint) -> Result<SparseVec<R::Elem>> {
        if v.len() != self.module.weight_module().dim() {
            return Err(shape(format!(
                "coefficient vector of length {} for a module of rank {}",
                v.len(),
                self.module.weight_module().dim()
            )));
        }
        self.path_sparse(&continued_fraction_path(alpha, beta), v)
    }

    fn path_sparse(&self, path: &[PathStep], v: &[R::Elem]) -> Result<SparseVec<R::Elem>> {
        let r = self.ring();
        let mut acc: SparseVec<R::Elem> = Vec::new();
        for step in path {
            let x = self.unimodular_symbol(&step.g, v)?;
            let c = r.from_i64(step.sign.into());
            acc = sparse::combine(r, &r.one(), &acc, &c, &x);
        }
        Ok(acc)
    }

    /// Class of `Σ sign·v{g0, g∞}` over the steps of a path, in generator
    /// coordinates.
    pub fn convert_symbol(&self, path: &[PathStep], v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.module.weight_module().dim() {
            return Err(shape("coefficient vector does not match the weight module"));
        }
        let s = self.path_sparse(path, v)?;
        self.presentation
            .coordinates_sparse(&s)
            .ok_or_else(|| crate::error::internal("symbol outside the ambient module"))
    }

    /// Class of `v·{α, β}` in generator coordinates.
    pub fn symbol_class(&self, v: &[R::Elem], alpha: &QPoint, beta: &QPoint) -> Result<Vec<R::Elem>> {
        let s = self.symbol_sparse(v, alpha, beta)?;
        self.presentation
            .coordinates_sparse(&s)
            .ok_or_else(|| crate::error::internal("symbol outside the ambient module"))
    }
}

/// Invariant factors of the torsion submodule of a module over `Z`.
pub fn torsion_invariants<R: Ring>(q: &QuotientModule<R>) -> Result<Vec<R::Elem>> {
    if q.ring().kind() != RingKind::Integers {
        return Err(Error::UnsupportedRing(format!(
            "torsion invariants need the integers, not {:?}",
            q.ring().kind()
        )));
    }
    Ok(q.torsion_invariants())
}
