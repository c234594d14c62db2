//! Report documents. Every number is a decimal string so exact values of
//! any size survive a round trip through JSON.

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Document<T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub job: JobEcho,
    pub result: T,
}

#[derive(Debug, Serialize)]
pub struct JobEcho {
    pub group: String,
    pub n: String,
    pub index: String,
    pub weight: String,
    pub ring: String,
}

#[derive(Debug, Serialize)]
pub struct Elliptic {
    pub order: String,
    pub count: String,
}

/// Torsion invariants of each presentation; empty over a field.
#[derive(Debug, Serialize)]
pub struct Torsion {
    pub manin: Vec<String>,
    pub cuspidal: Vec<String>,
    pub h1: Vec<String>,
    pub h1_par: Vec<String>,
    pub surface_h1: Vec<String>,
    pub surface_h1_par: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Dims {
    pub manin: String,
    pub cuspidal: String,
    pub eisenstein: String,
    pub boundary: String,
    pub h1: String,
    pub h1_par: String,
    pub surface_h1: String,
    pub surface_h1_par: String,
    pub genus: String,
    pub cusps: String,
    pub elliptic: Vec<Elliptic>,
    pub torsion: Torsion,
}

#[derive(Debug, Serialize)]
pub struct Factor {
    pub factor: String,
    pub coefficients: Vec<String>,
    pub multiplicity: String,
}

#[derive(Debug, Serialize)]
pub struct Hecke {
    pub op: String,
    pub space: String,
    pub dimension: String,
    /// Row-major; column `j` is the image of generator `j`.
    pub matrix: Vec<Vec<String>>,
    /// Constant term first.
    pub charpoly: Vec<String>,
    pub charpoly_text: String,
    pub factorization: Option<Vec<Factor>>,
}

#[derive(Debug, Serialize)]
pub struct Eigenvalue {
    pub op: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Piece {
    pub dim: String,
    pub kind: String,
    pub eigenvalues: Vec<Eigenvalue>,
    /// `a_1, …, a_bound` for eigenform pieces, empty otherwise.
    pub coefficients: Vec<String>,
    /// The irreducible factor for pieces whose eigenvalues leave the field.
    pub factor: Option<Factor>,
}

#[derive(Debug, Serialize)]
pub struct Qexp {
    pub bound: String,
    pub sturm_bound: String,
    pub cuspidal_dimension: String,
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Serialize)]
pub struct Ranks {
    pub manin: String,
    pub h1: String,
    pub surface_h1: String,
    pub cuspidal: String,
    pub h1_par: String,
    pub surface_h1_par: String,
}

#[derive(Debug, Serialize)]
pub struct LocalTerm {
    pub coset: String,
    pub order: String,
    pub dimension: String,
}

#[derive(Debug, Serialize)]
pub struct Compare {
    pub ranks: Ranks,
    pub kernel_dimension: String,
    pub local_terms: Vec<LocalTerm>,
    pub local_terms_total: String,
    /// Local terms modulo the image of the global invariants.
    pub local_terms_net: String,
    pub torsion: Torsion,
    pub verdict: String,
}

/// Human-readable rendering.
pub trait Table {
    fn rows(&self) -> Vec<(String, String)>;
}

/// Aligned `key  value` lines.
pub fn render_rows(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}").trim_end().to_string() + "\n")
        .collect()
}

fn row(k: &str, v: impl Into<String>) -> (String, String) {
    (k.to_string(), v.into())
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.join(", ")
    }
}

fn torsion_rows(t: &Torsion) -> Vec<(String, String)> {
    vec![
        row("torsion manin", list(&t.manin)),
        row("torsion cuspidal", list(&t.cuspidal)),
        row("torsion h1", list(&t.h1)),
        row("torsion h1_par", list(&t.h1_par)),
        row("torsion surface_h1", list(&t.surface_h1)),
        row("torsion surface_h1_par", list(&t.surface_h1_par)),
    ]
}

impl Table for JobEcho {
    fn rows(&self) -> Vec<(String, String)> {
        vec![
            row("group", &*self.group),
            row("n", &*self.n),
            row("index", &*self.index),
            row("weight", &*self.weight),
            row("ring", &*self.ring),
        ]
    }
}

impl Table for Dims {
    fn rows(&self) -> Vec<(String, String)> {
        let elliptic: Vec<String> = self.elliptic.iter().map(|e| format!("{}x order {}", e.count, e.order)).collect();
        let mut out = vec![
            row("manin", &*self.manin),
            row("cuspidal", &*self.cuspidal),
            row("eisenstein", &*self.eisenstein),
            row("boundary", &*self.boundary),
            row("h1", &*self.h1),
            row("h1_par", &*self.h1_par),
            row("surface_h1", &*self.surface_h1),
            row("surface_h1_par", &*self.surface_h1_par),
            row("genus", &*self.genus),
            row("cusps", &*self.cusps),
            row("elliptic", list(&elliptic)),
        ];
        out.extend(torsion_rows(&self.torsion));
        out
    }
}

fn factor_text(f: &Factor) -> String {
    format!("({})^{}", f.factor, f.multiplicity)
}

impl Table for Hecke {
    fn rows(&self) -> Vec<(String, String)> {
        let mut out = vec![
            row("op", &*self.op),
            row("space", &*self.space),
            row("dimension", &*self.dimension),
        ];
        for (i, r) in self.matrix.iter().enumerate() {
            out.push(row(if i == 0 { "matrix" } else { "" }, format!("[{}]", r.join(" "))));
        }
        out.push(row("charpoly", &*self.charpoly_text));
        if let Some(f) = &self.factorization {
            let parts: Vec<String> = f.iter().map(factor_text).collect();
            out.push(row("factorization", list(&parts)));
        }
        out
    }
}

impl Table for Qexp {
    fn rows(&self) -> Vec<(String, String)> {
        let mut out = vec![
            row("bound", &*self.bound),
            row("sturm_bound", &*self.sturm_bound),
            row("cuspidal_dimension", &*self.cuspidal_dimension),
        ];
        for (i, p) in self.pieces.iter().enumerate() {
            let head = format!("piece {}", i + 1);
            out.push(row(&head, format!("dim {}, {}", p.dim, p.kind)));
            if !p.coefficients.is_empty() {
                out.push(row("  a_n", p.coefficients.join(", ")));
            }
            if let Some(f) = &p.factor {
                out.push(row("  factor", factor_text(f)));
            }
        }
        out
    }
}

impl Table for Compare {
    fn rows(&self) -> Vec<(String, String)> {
        let r = &self.ranks;
        let mut out = vec![
            row("manin", &*r.manin),
            row("h1", &*r.h1),
            row("surface_h1", &*r.surface_h1),
            row("cuspidal", &*r.cuspidal),
            row("h1_par", &*r.h1_par),
            row("surface_h1_par", &*r.surface_h1_par),
            row("kernel_dimension", &*self.kernel_dimension),
        ];
        let terms: Vec<String> = self
            .local_terms
            .iter()
            .map(|t| format!("coset {} order {} dim {}", t.coset, t.order, t.dimension))
            .collect();
        out.push(row("local_terms", list(&terms)));
        out.push(row("local_terms_total", &*self.local_terms_total));
        out.push(row("local_terms_net", &*self.local_terms_net));
        out.extend(torsion_rows(&self.torsion));
        out.push(row("verdict", &*self.verdict));
        out
    }
}
