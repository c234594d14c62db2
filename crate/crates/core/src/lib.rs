pub mod cohomology;
pub mod congruence;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod modsym;
pub mod poly;
pub mod ring;
pub mod triangle;
pub mod weight;

pub use error::{Error, Result};
