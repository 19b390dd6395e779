//! Exact convex hulls and the mass bounds built on `Θ⁺`.

mod hull;

pub use hull::{hull, hull_incremental, Halfspace, RatPoint, RatPolytope};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::indicator::{generic_indicator, PolyhedralIndicator, UFunctionSpec};

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n as u64).product::<u64>().max(1).into())
}

/// `Θ⁺ = conv(G ∪ {0})`.
pub fn theta_plus(phi: &PolyhedralIndicator) -> RatPolytope {
    let mut pts: Vec<RatPoint> = phi.generators().iter().cloned().collect();
    pts.push(vec![BigRational::zero(); phi.n()]);
    hull(&pts).expect("indicator dimension is already checked")
}

/// `n! · Vol(Θ⁺)`, the total Monge-Ampère mass of `Φ`.
pub fn newton_number(phi: &PolyhedralIndicator) -> BigRational {
    factorial(phi.n()) * theta_plus(phi).volume()
}

/// Split of the total mass into the atom at the origin and the torus part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassReport {
    pub total: BigRational,
    pub tau_prime: BigRational,
    pub tau_doubleprime: BigRational,
}

pub fn mass_decomposition(phi: &PolyhedralIndicator) -> Result<MassReport> {
    if !phi.is_i0() {
        return Err(Error::NotInI0);
    }
    let pts: Vec<RatPoint> = phi.generators().iter().cloned().collect();
    let total = newton_number(phi);
    let tau_doubleprime = factorial(phi.n()) * hull(&pts)?.volume();
    let tau_prime = &total - &tau_doubleprime;
    debug_assert!(!tau_prime.is_negative());
    Ok(MassReport {
        total,
        tau_prime,
        tau_doubleprime,
    })
}

/// `ψ(a)ⁿ / (a₁⋯aₙ)`.
pub fn directional_bound(phi: &PolyhedralIndicator, a: &[BigRational]) -> Result<BigRational> {
    check_dim(phi.n(), a.len())?;
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::NonPositiveDirection);
    }
    let psi = phi.eval_psi(a)?;
    let num = num_traits::pow(psi, phi.n());
    let den = a.iter().fold(BigRational::one(), |acc, v| acc * v);
    Ok(num / den)
}

/// `n! · Π_k ψ(1_k)`.
pub fn multitype_bound(phi: &PolyhedralIndicator) -> BigRational {
    phi.multitype()
        .iter()
        .fold(factorial(phi.n()), |acc, s| acc * s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundChain {
    /// `N(Ψ_{u,x})` at the base point.
    pub at_basepoint: BigRational,
    /// `N(Ψ_u)`.
    pub generic: BigRational,
    /// Multitype bound of `Ψ_u`.
    pub multitype: BigRational,
}

impl BoundChain {
    pub fn is_nondecreasing(&self) -> bool {
        self.at_basepoint <= self.generic && self.generic <= self.multitype
    }
}

pub fn bound_chain(u: &UFunctionSpec) -> Result<BoundChain> {
    let g = generic_indicator(u)?;
    let chain = BoundChain {
        at_basepoint: newton_number(&u.indicator()?),
        generic: newton_number(&g),
        multitype: multitype_bound(&g),
    };
    if !chain.is_nondecreasing() {
        return Err(Error::InvalidArgument(format!(
            "bound chain not monotone: {} {} {}",
            chain.at_basepoint, chain.generic, chain.multitype
        )));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests;
