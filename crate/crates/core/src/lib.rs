//! Exact computer algebra for Drinfeld modules over F_q(T): twisted
//! polynomial arithmetic, torsion and motive determinants, Atkin-Lehner
//! twists, prime search by quadratic reciprocity, Drinfeld modular-form
//! series expansions, explicit cover polynomials, and statistical Galois
//! verification of the resulting PSL(2, q^2) covers.

pub mod algebra;
pub mod artifact;
pub mod bivar;
pub mod cli;
pub mod cover;
pub mod drinfeld;
pub mod error;
pub mod galois;
pub mod modforms;
pub mod ore;
pub mod parse;
pub mod series;

pub use error::{Error, Result};
