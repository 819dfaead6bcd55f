//! Exact arithmetic: rationals, multivariate polynomials, truncated and
//! univariate polynomial rings.

pub mod linear;
mod monomial;
mod poly;
mod rational;
mod truncated;
mod unipoly;

pub use monomial::{variable_names, Monomial, MonomialOrder, MAX_VARS};
pub use poly::{poly_arith, MultiPoly, PolyOp};
pub use rational::Rational;
pub use truncated::{truncated_mul_inv, TruncatedPoly};
pub use unipoly::{poly_substitute_negate, UniPolyQ};
