//! Exact computations in the Fock spaces of `gl(m|n)` and `gl(m+n)`:
//! monomial, canonical and dual canonical bases, their Kazhdan–Lusztig
//! polynomials, truncation between windows, the super duality map `♮`, a
//! tensor-space Hecke oracle and the resulting irreducible characters.

pub mod atypicality;
pub mod bases;
pub mod bruhat;
pub mod characters;
pub mod duality;
pub mod error;
pub mod expansion;
pub mod hecke;
pub mod ops;
pub mod poly;
pub mod suites;
pub mod truncation;
pub mod weight;

pub use error::{Error, Result};
pub use expansion::{Basis, Expansion};
pub use poly::LaurentPoly;
pub use weight::{Flavor, HighestWeight, Weight};
