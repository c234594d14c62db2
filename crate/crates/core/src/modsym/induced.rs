use crate::error::{domain, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::Matrix;
use crate::ring::Ring;
use crate::triangle::{Letter, SubgroupRep};
use crate::weight::WeightModule;

/// A block-sparse operator on `R^{μ·d}`: row block `i` has blocks at a few
/// column blocks.
#[derive(Debug, Clone)]
pub struct BlockOperator<R: Ring> {
    ring: R,
    dim: usize,
    rows: Vec<Vec<(usize, Matrix<R>)>>,
}

impl<R: Ring> BlockOperator<R> {
    fn identity(ring: R, blocks: usize, dim: usize) -> Self {
        let id = Matrix::identity(ring.clone(), dim);
        BlockOperator {
            ring,
            dim,
            rows: (0..blocks).map(|i| vec![(i, id.clone())]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len() * self.dim
    }

    /// The `(i, j)` block, if nonzero.
    pub fn block(&self, i: usize, j: usize) -> Option<&Matrix<R>> {
        self.rows[i].iter().find(|e| e.0 == j).map(|e| &e.1)
    }

    fn compose(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Matrix<R>)> = Vec::new();
                for (j, a) in row {
                    for (k, b) in &other.rows[*j] {
                        let p = a.mul(b).expect("square blocks");
                        add_block(&mut acc, *k, p);
                    }
                }
                acc
            })
            .collect();
        BlockOperator { ring: self.ring.clone(), dim: self.dim, rows }
    }

    fn combine(&self, a: &R::Elem, other: &Self, b: &R::Elem) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(x, y)| {
                let mut acc: Vec<(usize, Matrix<R>)> = Vec::new();
                for (j, m) in x {
                    add_block(&mut acc, *j, m.scale(a));
                }
                for (j, m) in y {
                    add_block(&mut acc, *j, m.scale(b));
                }
                acc
            })
            .collect();
        BlockOperator { ring: self.ring.clone(), dim: self.dim, rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(&self.ring.one(), other, &self.ring.one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(&self.ring.one(), other, &self.ring.from_i64(-1))
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let n = self.size();
        let d = self.dim;
        let mut m = Matrix::zero(self.ring.clone(), n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                for a in 0..d {
                    for c in 0..d {
                        m.set(i * d + a, j * d + c, b.get(a, c).clone());
                    }
                }
            }
        }
        m
    }

    /// Columns as sparse vectors (images of the basis vectors).
    pub(crate) fn sparse_columns(&self) -> Vec<SparseVec<R::Elem>> {
        let d = self.dim;
        let mut cols: Vec<SparseVec<R::Elem>> = vec![Vec::new(); self.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                for c in 0..d {
                    for a in 0..d {
                        let x = b.get(a, c);
                        if !self.ring.is_zero(x) {
                            cols[j * d + c].push((i * d + a, x.clone()));
                        }
                    }
                }
            }
        }
        for c in cols.iter_mut() {
            c.sort_by_key(|e| e.0);
        }
        cols
    }
}

fn add_block<R: Ring>(acc: &mut Vec<(usize, Matrix<R>)>, k: usize, m: Matrix<R>) {
    match acc.iter_mut().find(|e| e.0 == k) {
        Some(e) => e.1 = e.1.add(&m).expect("square blocks"),
        None => acc.push((k, m)),
    }
    acc.retain(|e| !e.1.is_zero());
    acc.sort_by_key(|e| e.0);
}

/// `M = Coind_Γ^{Δ_n} V`: functions `f` on `Δ_n` with `f(γx) = γ·f(x)`,
/// stored by their values `f(R_i)` at the signed coset representatives
/// `R_i`. Basis order: coset major, monomial minor. `Δ_n` acts on the left
/// by `(g·f)(x) = f(xg)`; the right action of the induced module is
/// `m·g = g⁻¹·m`.
#[derive(Debug, Clone)]
pub struct InducedModule<R: Ring> {
    sub: SubgroupRep,
    w: WeightModule<R>,
    rep_words: Vec<Vec<Letter>>,
    rep_signs: Vec<bool>,
    rho_reps: Vec<Matrix<R>>,
    rho_reps_inv: Vec<Matrix<R>>,
    sigma: BlockOperator<R>,
    tau: BlockOperator<R>,
}

impl<R: Ring> InducedModule<R> {
    pub fn new(sub: &SubgroupRep, w: &WeightModule<R>) -> Result<Self> {
        if sub.n() != w.n() {
            return Err(domain(format!(
                "subgroup of Δ_{} with a coefficient module for Δ_{}",
                sub.n(),
                w.n()
            )));
        }
        if w.negates() && sub.signs().is_none() {
            return Err(domain(
                "−1 acts as −1 on the coefficients but lies in the subgroup; odd weight needs a subgroup of SL₂ without −1",
            ));
        }
        let rep_words = sub.coset_rep_words();
        let rep_signs: Vec<bool> = rep_words.iter().map(|wd| sub.act_word(0, wd).1).collect();
        let sign = |m: Matrix<R>, neg: bool| if neg && w.negates() { m.neg() } else { m };
        let rho_reps: Vec<Matrix<R>> = rep_words
            .iter()
            .zip(&rep_signs)
            .map(|(wd, &e)| sign(w.rho_word(wd), e))
            .collect();
        let rho_reps_inv: Vec<Matrix<R>> = rep_words
            .iter()
            .zip(&rep_signs)
            .map(|(wd, &e)| sign(w.rho_word_inverse(wd), e))
            .collect();
        let mut m = InducedModule {
            sub: sub.clone(),
            w: w.clone(),
            rep_words,
            rep_signs,
            rho_reps,
            rho_reps_inv,
            sigma: BlockOperator::identity(w.ring().clone(), 1, 1),
            tau: BlockOperator::identity(w.ring().clone(), 1, 1),
        };
        m.sigma = m.letter_operator(Letter::Sigma);
        m.tau = m.letter_operator(Letter::Tau(1));
        Ok(m)
    }

    /// `L_g` for a letter: block `(i, i·g)` is `ρ(γ)` for
    /// `γ = ±R_i·g̃·R_{i·g}⁻¹ ∈ Γ`.
    fn letter_operator(&self, l: Letter) -> BlockOperator<R> {
        let rows = (0..self.sub.index())
            .map(|i| {
                let (j, f) = self.sub.act_signed(i, l);
                let mut b = self.rho_reps[i]
                    .mul(self.w.rho_letter(l))
                    .and_then(|x| x.mul(&self.rho_reps_inv[j]))
                    .expect("square");
                if f && self.w.negates() {
                    b = b.neg();
                }
                vec![(j, b)]
            })
            .collect();
        BlockOperator {
            ring: self.w.ring().clone(),
            dim: self.w.dim(),
            rows,
        }
    }

    pub fn subgroup(&self) -> &SubgroupRep {
        &self.sub
    }

    pub fn weight_module(&self) -> &WeightModule<R> {
        &self.w
    }

    pub fn ring(&self) -> &R {
        self.w.ring()
    }

    pub fn rank(&self) -> usize {
        self.sub.index() * self.w.dim()
    }

    pub fn coset_rep_words(&self) -> &[Vec<Letter>] {
        &self.rep_words
    }

    /// Whether the signed representative `R_i` is the negative of the
    /// letter-wise lift of its word.
    pub fn rep_sign(&self, i: usize) -> bool {
        self.rep_signs[i]
    }

    pub(crate) fn rho_rep(&self, i: usize) -> &Matrix<R> {
        &self.rho_reps[i]
    }

    pub fn identity_operator(&self) -> BlockOperator<R> {
        BlockOperator::identity(self.ring().clone(), self.sub.index(), self.w.dim())
    }

    /// Left action of a word in the letters.
    pub fn left_word(&self, word: &[Letter]) -> BlockOperator<R> {
        let mut acc = self.identity_operator();
        for &l in word {
            let op = match l {
                Letter::Sigma => self.sigma.clone(),
                Letter::Tau(k) => (0..k % self.sub.n()).fold(self.identity_operator(), |a, _| a.compose(&self.tau)),
            };
            acc = acc.compose(&op);
        }
        acc
    }

    pub fn left_sigma(&self) -> &BlockOperator<R> {
        &self.sigma
    }

    pub fn left_tau(&self) -> &BlockOperator<R> {
        &self.tau
    }

    /// `L_T = L_τ L_σ` for the parabolic `T = τσ`.
    pub fn left_t(&self) -> BlockOperator<R> {
        self.tau.compose(&self.sigma)
    }

    /// `N_σ = 1 + σ` (left action).
    pub fn norm_sigma(&self) -> BlockOperator<R> {
        self.identity_operator().add(&self.sigma)
    }

    /// `N_τ = 1 + τ + … + τ^{n−1}` (left action).
    pub fn norm_tau(&self) -> BlockOperator<R> {
        let mut acc = self.identity_operator();
        let mut p = self.identity_operator();
        for _ in 1..self.sub.n() {
            p = p.compose(&self.tau);
            acc = acc.add(&p);
        }
        acc
    }

    /// Right action `m·g = g⁻¹·m` of a letter.
    pub fn right_letter(&self, l: Letter) -> BlockOperator<R> {
        let inv = match l {
            Letter::Sigma => Letter::Sigma,
            Letter::Tau(k) => Letter::Tau(self.sub.n() - k % self.sub.n()),
        };
        self.left_word(&[inv])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::CongruenceSubgroup;
    use crate::ring::{Integers, Rationals};
    use crate::weight::Variant;
    use rand::SeedableRng;

    fn check_relations<R: Ring>(m: &InducedModule<R>) {
        let n = m.subgroup().n();
        let s2 = m.left_sigma().compose(m.left_sigma());
        assert!(s2.to_matrix().is_identity());
        let tn = m.left_word(&[Letter::Tau(1); 1]).to_matrix().pow(n).unwrap();
        assert!(tn.is_identity());
        // right action: T = "τ then σ"
        let rt = m.right_letter(Letter::Tau(1)).to_matrix();
        let rs = m.right_letter(Letter::Sigma).to_matrix();
        let t_right = m.left_t().to_matrix();
        // m·T = T⁻¹·m, and m·τ·σ = σ⁻¹(τ⁻¹ m)
        let lhs = rs.mul(&rt).unwrap();
        assert_eq!(lhs.mul(&t_right).unwrap(), Matrix::identity(m.ring().clone(), m.rank()));
    }

    #[test]
    fn relations_hold() {
        let g = CongruenceSubgroup::gamma0(11).unwrap();
        for k in [2, 4, 6] {
            let w = WeightModule::new(Integers, 3, k, Variant::Projective).unwrap();
            check_relations(&InducedModule::new(g.subgroup(), &w).unwrap());
        }
        let g1 = CongruenceSubgroup::gamma1(7).unwrap();
        for k in [2, 3, 5] {
            let w = WeightModule::new(Integers, 3, k, Variant::PlusMinusOne).unwrap();
            check_relations(&InducedModule::new(g1.subgroup(), &w).unwrap());
        }
        let w = WeightModule::new(Integers, 3, 3, Variant::PlusMinusOne).unwrap();
        assert!(InducedModule::new(g.subgroup(), &w).is_err());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 3..7 {
            let sub = SubgroupRep::random_transitive(n, 10, &mut rng).unwrap();
            let w = WeightModule::trivial(Rationals, n).unwrap();
            check_relations(&InducedModule::new(&sub, &w).unwrap());
        }
    }
}
