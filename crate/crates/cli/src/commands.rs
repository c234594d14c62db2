//! The four commands, generic over the coefficient ring.

use modsym::cohomology::Cohomology;
use modsym::hecke::{factor_in, ModularSymbols, OpKey, PieceKind};
use modsym::linalg::{charpoly, QuotientModule};
use modsym::modsym::{torsion_invariants, ManinSpace};
use modsym::ring::Ring;

use crate::error::{ensure, CliError};
use crate::job::Job;
use crate::report::{
    Compare, Dims, Eigenvalue, Elliptic, Factor, Hecke, LocalTerm, Piece, Qexp, Ranks, Torsion,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    Full,
    Cuspidal,
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn render_all<R: Ring>(r: &R, v: &[R::Elem]) -> Vec<String> {
    v.iter().map(|x| r.render(x)).collect()
}

/// `x^2 + 4*x + 4` from coefficients listed constant term first.
pub fn poly_text<R: Ring>(r: &R, coeffs: &[R::Elem]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if r.is_zero(c) {
            continue;
        }
        let text = r.render(c);
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, text.clone()),
        };
        let body = if body.contains(' ') { format!("({body})") } else { body };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let term = match (body.as_str(), i) {
            (_, 0) => body.clone(),
            ("1", _) => mono,
            _ => format!("{body}*{mono}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn factor<R: Ring>(r: &R, f: &[R::Elem], m: usize) -> Factor {
    Factor {
        factor: poly_text(r, f),
        coefficients: render_all(r, f),
        multiplicity: s(m),
    }
}

fn torsion_list<R: Ring>(q: &QuotientModule<R>) -> Result<Vec<String>, CliError> {
    let r = q.ring();
    if r.is_field() {
        return Ok(Vec::new());
    }
    Ok(render_all(r, &torsion_invariants(q)?))
}

/// The six presentations compared throughout: Manin, `H¹`, surface `H¹`
/// and their cuspidal or parabolic counterparts.
struct Presentations<R: Ring> {
    manin: ManinSpace<R>,
    cohomology: Cohomology<R>,
    cuspidal: QuotientModule<R>,
    eisenstein: QuotientModule<R>,
    h1: QuotientModule<R>,
    h1_par: QuotientModule<R>,
    surface_h1: QuotientModule<R>,
    surface_h1_par: QuotientModule<R>,
}

impl<R: Ring> Presentations<R> {
    fn build(job: &Job, ring: R) -> Result<Self, CliError> {
        let w = job.group.weight_module(ring, job.weight)?;
        let manin = ManinSpace::new(&job.group.subgroup, &w)?;
        let cohomology = Cohomology::from_module(manin.module().clone());
        let boundary = manin.boundary()?;
        Ok(Presentations {
            cuspidal: boundary.map.kernel,
            eisenstein: boundary.map.image,
            h1: cohomology.h1()?.module,
            h1_par: cohomology.h1_par()?.module,
            surface_h1: cohomology.surface_h1()?.module,
            surface_h1_par: cohomology.surface_h1_par()?.module,
            manin,
            cohomology,
        })
    }

    fn ranks(&self) -> [usize; 6] {
        [
            self.manin.rank(),
            self.h1.rank(),
            self.surface_h1.rank(),
            self.cuspidal.rank(),
            self.h1_par.rank(),
            self.surface_h1_par.rank(),
        ]
    }

    fn torsion(&self) -> Result<Torsion, CliError> {
        Ok(Torsion {
            manin: torsion_list(self.manin.presentation())?,
            cuspidal: torsion_list(&self.cuspidal)?,
            h1: torsion_list(&self.h1)?,
            h1_par: torsion_list(&self.h1_par)?,
            surface_h1: torsion_list(&self.surface_h1)?,
            surface_h1_par: torsion_list(&self.surface_h1_par)?,
        })
    }

    /// Rank identities that hold for every ring, and the full comparison
    /// in characteristic zero where all stabilizer orders are invertible.
    fn check(&self) -> Result<(), CliError> {
        let r = self.ranks();
        ensure(r[3] + self.eisenstein.rank() == r[0], || {
            format!("cuspidal {} + eisenstein {} != manin {}", r[3], self.eisenstein.rank(), r[0])
        })?;
        let ring = self.manin.ring();
        if ring.characteristic() == 0 {
            ensure(r[0] == r[1] && r[1] == r[2] && r[3] == r[4] && r[4] == r[5], || {
                format!("ranks disagree in characteristic zero: {r:?}")
            })?;
        }
        Ok(())
    }
}

pub fn dims<R: Ring>(job: &Job, ring: R) -> Result<Dims, CliError> {
    let p = Presentations::build(job, ring)?;
    p.check()?;
    let sub = &job.group.subgroup;
    let r = p.ranks();
    Ok(Dims {
        manin: s(r[0]),
        cuspidal: s(r[3]),
        eisenstein: s(p.eisenstein.rank()),
        boundary: s(p.cohomology.boundary()?.rank()),
        h1: s(r[1]),
        h1_par: s(r[4]),
        surface_h1: s(r[2]),
        surface_h1_par: s(r[5]),
        genus: s(sub.genus()?),
        cusps: s(sub.cusps().len()),
        elliptic: sub
            .elliptic_counts()
            .into_iter()
            .map(|(order, count)| Elliptic { order: s(order), count: s(count) })
            .collect(),
        torsion: p.torsion()?,
    })
}

pub fn compare<R: Ring>(job: &Job, ring: R) -> Result<Compare, CliError> {
    let p = Presentations::build(job, ring)?;
    p.check()?;
    let c = p.cohomology.comparison(&p.manin)?;
    let field = p.manin.ring().is_field();
    if field {
        ensure(c.kernel_dim() == c.local_net_dim(), || {
            format!("comparison kernel {} but net local terms {}", c.kernel_dim(), c.local_net_dim())
        })?;
    }
    if field && p.manin.ring().characteristic() == 0 {
        ensure(c.is_isomorphism(), || "comparison map is not an isomorphism over a field of characteristic zero".into())?;
    }
    let verdict = if c.is_isomorphism() {
        "isomorphic".to_string()
    } else {
        format!("kernel dimension {}, local terms dimension {}", c.kernel_dim(), c.local_net_dim())
    };
    let r = p.ranks();
    Ok(Compare {
        ranks: Ranks {
            manin: s(r[0]),
            h1: s(r[1]),
            surface_h1: s(r[2]),
            cuspidal: s(r[3]),
            h1_par: s(r[4]),
            surface_h1_par: s(r[5]),
        },
        kernel_dimension: s(c.kernel_dim()),
        local_terms: c
            .local_terms
            .iter()
            .map(|t| LocalTerm {
                coset: s(t.coset),
                order: s(t.order),
                dimension: s(t.module.num_generators()),
            })
            .collect(),
        local_terms_total: s(c.local_total_dim()),
        local_terms_net: s(c.local_net_dim()),
        torsion: p.torsion()?,
        verdict,
    })
}

fn symbols<R: Ring>(job: &Job, ring: R) -> Result<ModularSymbols<R>, CliError> {
    let group = job.group.congruence.as_ref().ok_or_else(|| {
        CliError::Unsupported("Hecke operators need a congruence subgroup (gamma0:N or gamma1:N)".into())
    })?;
    Ok(ModularSymbols::new(group, ring, job.weight)?)
}

pub fn hecke<R: Ring>(job: &Job, ring: R, op: OpKey, space: Space) -> Result<Hecke, CliError> {
    let ms = symbols(job, ring.clone())?;
    let q = match space {
        Space::Full => ms.space().presentation().clone(),
        Space::Cuspidal => ms.cuspidal()?,
    };
    let m = match op {
        OpKey::Hecke(p) => ms.hecke_on(&q, p)?,
        OpKey::Diamond(d) => ms.diamond_on(&q, d)?,
    }
    .matrix;
    let cp = charpoly(&m)?;
    let factorization = factor_in(&ring, &cp).map(|fs| fs.iter().map(|(f, k)| factor(&ring, f, *k)).collect());
    Ok(Hecke {
        op: s(op),
        space: s(match space {
            Space::Full => "full",
            Space::Cuspidal => "cuspidal",
        }),
        dimension: s(m.rows()),
        matrix: m.row_vectors().iter().map(|row| render_all(&ring, row)).collect(),
        charpoly: render_all(&ring, &cp),
        charpoly_text: poly_text(&ring, &cp),
        factorization,
    })
}

pub fn qexp<R: Ring>(job: &Job, ring: R, bound: u64) -> Result<Qexp, CliError> {
    if !ring.is_field() {
        return Err(CliError::Unsupported("q-expansions need a field: use --ring q or fp:p".into()));
    }
    let ms = symbols(job, ring.clone())?;
    let report = ms.cuspidal_eigensystem(bound)?;
    let cusp_dim: usize = report.pieces.iter().map(|p| p.dim).sum();
    let pieces = report
        .pieces
        .iter()
        .map(|p| {
            let mut piece = Piece {
                dim: s(p.dim),
                kind: s(&p.kind),
                eigenvalues: Vec::new(),
                coefficients: Vec::new(),
                factor: None,
            };
            match &p.kind {
                PieceKind::Eigenform { eigenvalues, coefficients } => {
                    piece.eigenvalues = eigenvalues
                        .iter()
                        .map(|(k, v)| Eigenvalue { op: s(k), value: ring.render(v) })
                        .collect();
                    piece.coefficients = render_all(&ring, coefficients);
                }
                PieceKind::Irrational { key, factor: f, multiplicity } => {
                    piece.kind = format!("{} ({key})", p.kind);
                    piece.factor = Some(factor(&ring, f, *multiplicity));
                }
                PieceKind::NonDiagonalizable { .. } | PieceKind::Unsplit { .. } => {}
            }
            piece
        })
        .collect();
    Ok(Qexp {
        bound: s(bound),
        sturm_bound: s(ms.sturm_bound()),
        cuspidal_dimension: s(cusp_dim),
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use modsym::ring::Rationals;

    fn q(v: &[i64]) -> Vec<<Rationals as Ring>::Elem> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly_text(&Rationals, &q(&[4, 4, 1])), "x^2 + 4*x + 4");
        assert_eq!(poly_text(&Rationals, &q(&[-1, 1, 1])), "x^2 + x - 1");
        assert_eq!(poly_text(&Rationals, &q(&[0, -2, 0, 1])), "x^3 - 2*x");
        assert_eq!(poly_text(&Rationals, &q(&[])), "0");
        assert_eq!(poly_text(&Rationals, &q(&[-3])), "-3");
    }
}
