//! Logarithmic differential forms of hyperplane arrangements and their Chern classes.

pub mod algebra;
pub mod chern_csm;
pub mod arrangements;
pub mod error;
pub mod examples;
pub mod groebner;
pub mod log_geometry;
pub mod parallel;

pub use error::{Error, Result};
