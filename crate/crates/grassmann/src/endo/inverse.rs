use super::jacobian::DualDerivatives;
use super::{linear, Endomorphism};
use crate::algebra::monomial::{full_mask, Mask};
use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// How to invert an automorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InverseStrategy {
    /// σ⁻¹(xⱼ) = Σ_α φ_σ(∂′^α(xⱼ)) x^α; needs odd images.
    Formula,
    /// Split off the linear part, then resubstitute until the unipotent part stabilises.
    Iteration,
}

pub(super) fn inverse<C: Coefficient>(sigma: &Endomorphism<C>, strategy: InverseStrategy) -> Result<Endomorphism<C>> {
    match strategy {
        InverseStrategy::Formula => by_formula(sigma),
        InverseStrategy::Iteration => by_iteration(sigma),
    }
}

#[cfg(test)]
/// φ_σ = (1 − σ(xₙ)∂′ₙ)⋯(1 − σ(x₁)∂′₁), the rightmost factor acting first.
fn phi_sigma<C: Coefficient>(sigma: &Endomorphism<C>, dual: &DualDerivatives<C>, b: &GrassmannElement<C>) -> GrassmannElement<C> {
    (1..=sigma.n()).fold(b.clone(), |acc, i| &acc - &(sigma.image(i) * &dual.apply(i, &acc)))
}

/// ∂′^α(xⱼ) for every α, indexed by mask, with the smallest index applied first.
fn dual_derivatives_of<C: Coefficient>(dual: &DualDerivatives<C>, n: usize, j: usize) -> Vec<GrassmannElement<C>> {
    let mut derived: Vec<GrassmannElement<C>> = Vec::with_capacity(1 << n);
    derived.push(GrassmannElement::generator(n, j));
    for alpha in 1..=full_mask(n) {
        let top = 32 - alpha.leading_zeros() as usize;
        let prev = &derived[(alpha & !(1 << (top - 1))) as usize];
        let d = if prev.is_zero() { prev.clone() } else { dual.apply(top, prev) };
        derived.push(d);
    }
    derived
}

/// Reads each scalar φ_σ(∂′^α(xⱼ)) off as the constant term of ∂′^α(xⱼ).
fn by_formula<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<Endomorphism<C>> {
    let n = sigma.n();
    if !sigma.is_automorphism() {
        return Err(Error::NotInvertible("linear part is singular".into()));
    }
    if sigma.images().iter().any(|img| !img.constant_term().is_zero()) {
        return Err(Error::NotInvertible("an image has a nonzero constant term".into()));
    }
    let dual = DualDerivatives::new(sigma)?;
    let images = (1..=n)
        .map(|j| {
            let derived = dual_derivatives_of(&dual, n, j);
            GrassmannElement::from_terms(
                n,
                derived.iter().enumerate().map(|(alpha, d)| (alpha as Mask, d.constant_term())),
            )
        })
        .collect();
    Ok(Endomorphism::from_images_unchecked(images))
}

fn by_iteration<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<Endomorphism<C>> {
    let n = sigma.n();
    let ainv = sigma
        .linear_part()
        .inverse()
        .ok_or_else(|| Error::NotInvertible("linear part is singular".into()))?;
    if sigma.images().iter().any(|img| !img.constant_term().is_zero()) {
        return Err(Error::NotInvertible("an image has a nonzero constant term".into()));
    }
    let linv = linear(&ainv);
    // σ = u σ_A with u = σ σ_{A⁻¹} unipotent: u(xᵢ) = xᵢ + aᵢ, aᵢ ∈ 𝔪².
    let u = sigma.then_apply(&linv);
    let tails: Vec<GrassmannElement<C>> =
        (1..=n).map(|i| u.image(i) - &GrassmannElement::generator(n, i)).collect();
    let mut y = Endomorphism::identity(n);
    let mut settled = false;
    for _ in 0..=n + 1 {
        let moved = y.act_all(&tails);
        let next = Endomorphism::from_images_unchecked(
            (1..=n).map(|i| &GrassmannElement::generator(n, i) - &moved[i - 1]).collect(),
        );
        if next == y {
            settled = true;
            break;
        }
        y = next;
    }
    if !settled {
        return Err(Error::Internal("resubstitution did not stabilise".into()));
    }
    Ok(linv.then_apply(&y))
}
