//! Exact arithmetic over F_q, F_q[T], F_q(T) and quadratic extensions,
//! together with quadratic characters, reciprocity and prime search.

pub mod field;
pub mod modring;
pub mod quadext;
pub mod ratfn;
pub mod reciprocity;
pub mod upoly;

pub use field::{Embedding, FieldCtx, FqElem};
pub use modring::{ModCtx, ModElem};
pub use quadext::{QuadCtx, QuadExt};
pub use ratfn::RatFn;
pub use reciprocity::{choose_prime, hansen_mullen_search, quadratic_character, reciprocity_sign};
pub use upoly::UPoly;
