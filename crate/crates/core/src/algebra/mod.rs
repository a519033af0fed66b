//! Finite fields, univariate and bivariate polynomials.

mod bipoly;
mod field;
mod poly;

pub use bipoly::BiPoly;
pub use field::{binom_mod, is_prime, Elem, Field, FieldRef, MAX_FIELD_ORDER};
pub use poly::Poly;

pub(crate) use field::mod_pow as field_mod_pow;
