//! Polyhedral indicators of `log|P|` for polynomial mappings, Newton
//! polyhedra at infinity and exact Monge-Ampère mass bounds, together with
//! the numeric and brute-force oracles used to check them.

pub mod error;
pub mod exactpoly;
pub mod indicator;
pub mod numericlab;
pub mod polytope;
pub mod zerooracle;

pub use error::{Error, Result};
