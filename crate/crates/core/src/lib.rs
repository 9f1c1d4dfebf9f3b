//! Exact computations with Coxeter groups, Hecke algebras and
//! Kazhdan-Lusztig bases, light leaves, and Bott-Samelson bimodules for
//! symmetric groups.

pub mod bimodule;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod leaves;
pub mod linalg;
pub mod poly;
pub mod rex;

pub use coxeter::{CoxeterSpec, CoxeterSystem, Element, Gen, Side, Word};
pub use error::{Error, Result};
pub use hecke::{HeckeAlgebra, HeckeElt};
pub use laurent::LaurentPoly;
