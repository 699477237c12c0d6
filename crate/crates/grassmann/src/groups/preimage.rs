//! Preimages under the Jacobian map Γ → E′ₙ.

use super::phi_prime;
use crate::algebra::monomial::full_mask;
use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;
use crate::endo::Endomorphism;
use crate::error::{Error, Result};

/// σ ∈ Γ with J(σ) = u − forced_top·x₁⋯xₙ. The forced coefficient is zero for odd n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Preimage<C> {
    pub sigma: Endomorphism<C>,
    pub forced_top: C,
}

/// A preimage of u up to the coefficient of x₁⋯xₙ.
pub fn jacobian_preimage_mod_top<C: Coefficient>(u: &GrassmannElement<C>) -> Result<Preimage<C>> {
    let n = u.n();
    if !u.is_even() || !u.constant_term().is_one() {
        return Err(Error::InvalidParameter("target must be even with constant term 1".into()));
    }
    let mut sigma = Endomorphism::identity(n);
    let mut w = u.clone();
    for s in 1..=(n.max(1) - 1) / 2 {
        let a = w.degree_part(2 * s);
        if a.is_zero() {
            continue;
        }
        let phi = phi_prime(&a, s)?;
        let jinv = phi.jacobian()?.det.invert_unit()?;
        w = phi.inv()?.act(&(&jinv * &w));
        sigma = sigma.then_apply(&phi);
    }
    let rest = w.filter(|m| m != 0 && m != full_mask(n));
    if !rest.is_zero() || !w.constant_term().is_one() {
        return Err(Error::Internal("Jacobian residual is not 1 modulo the top monomial".into()));
    }
    let forced_top = if n % 2 == 0 { w.coeff(full_mask(n)) } else { C::zero() };
    Ok(Preimage { sigma, forced_top })
}

/// σ ∈ Γ with J(σ) = u exactly, or `NoPreimage` when the top coefficient cannot be reached.
pub fn jacobian_preimage<C: Coefficient>(u: &GrassmannElement<C>) -> Result<Endomorphism<C>> {
    let pre = jacobian_preimage_mod_top(u)?;
    if pre.forced_top.is_zero() {
        Ok(pre.sigma)
    } else {
        Err(Error::NoPreimage(pre.forced_top.to_string()))
    }
}
