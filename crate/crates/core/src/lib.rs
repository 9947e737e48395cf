//! Exact algebra for Weyl algebras, their smash products with finite symplectic
//! groups, Koszul contractions of twisted bimodules and symplectic reflection
//! algebras.

pub mod catalog;
pub mod cli;
pub mod certificates;
pub mod cyclo;
pub mod error;
pub mod forms;
pub mod koszul;
pub mod linalg;
pub mod smash;
pub mod sra;
pub mod sympgroup;
pub mod weyl;

pub use cyclo::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use weyl::{Monomial, SymplecticForm, WeylElement};
