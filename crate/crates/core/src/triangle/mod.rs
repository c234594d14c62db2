//! The Hecke triangle groups `Δ_n = ⟨σ⟩ * ⟨τ⟩`: `λ_n` arithmetic, group
//! elements as reduced words with matrix lifts, and finite-index subgroups
//! as coset permutation representations.

mod element;
mod lambda;
mod subgroup;

pub use element::{Entry, GroupElement, Letter, TriangleGroup};
pub use lambda::{lambda_ring, LambdaRing};
pub use subgroup::{cycles, Cusp, EllipticPoint, PermFile, SignData, SubgroupRep};
