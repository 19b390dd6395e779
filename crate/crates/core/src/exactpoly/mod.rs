//! Exact sparse multivariate polynomials over the Gaussian rationals.

mod gaussian;
mod poly;

pub use gaussian::GaussianRational;
pub use poly::{check_supported_dim, Exponent, FloatPoly, Polynomial};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{check_dim, Error, Result};

/// A polynomial mapping `P = (P_1, …, P_m)` together with the exponent
/// weight `q` of `u = (1/q) log Σ |P_k|^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
    q: BigRational,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>, q: BigRational) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptyInput)?;
        let n = first.n();
        for c in &components {
            check_dim(n, c.n())?;
        }
        if !q.is_positive() {
            return Err(Error::NonPositiveWeight);
        }
        Ok(PolyMap { components, q })
    }

    /// Map with the default weight `q = 2`.
    pub fn with_default_q(components: Vec<Polynomial>) -> Result<Self> {
        Self::new(components, BigRational::one() + BigRational::one())
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }
}

/// The origin of `Q(i)ⁿ`.
pub fn origin(n: usize) -> Vec<GaussianRational> {
    vec![GaussianRational::default(); n]
}
