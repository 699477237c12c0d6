//! Constructors for the standard families of automorphisms.

use super::{Endomorphism, Matrix};
use crate::algebra::monomial::full_mask;
use crate::algebra::{GrassmannElement, Mask};
use crate::coeff::Coefficient;
use crate::error::Result;

fn x<C: Coefficient>(n: usize, i: usize) -> GrassmannElement<C> {
    GrassmannElement::generator(n, i)
}

/// σ_A: xᵢ ↦ Σⱼ aᵢⱼxⱼ.
pub fn linear<C: Coefficient>(a: &Matrix<C>) -> Endomorphism<C> {
    let n = a.n();
    Endomorphism::from_images_unchecked(
        (0..n)
            .map(|i| GrassmannElement::from_terms(n, (0..n).map(|j| (1 << j, a.get(i, j).clone()))))
            .collect(),
    )
}

/// γ_b: xᵢ ↦ xᵢ + bᵢ. Well-defined for odd bᵢ.
pub fn gamma<C: Coefficient>(b: &[GrassmannElement<C>]) -> Endomorphism<C> {
    let n = b.len();
    Endomorphism::from_images_unchecked((1..=n).map(|i| &x(n, i) + &b[i - 1]).collect())
}

/// σ_{i,b}: xᵢ ↦ xᵢ + b, other generators fixed.
pub fn shift<C: Coefficient>(i: usize, b: &GrassmannElement<C>) -> Endomorphism<C> {
    let n = b.n();
    let mut images: Vec<_> = (1..=n).map(|k| x(n, k)).collect();
    images[i - 1] = &images[i - 1] + b;
    Endomorphism::from_images_unchecked(images)
}

/// xᵢ ↦ xᵢ(1 + aᵢ).
pub fn scaling<C: Coefficient>(a: &[GrassmannElement<C>]) -> Endomorphism<C> {
    let n = a.len();
    Endomorphism::from_images_unchecked(
        (1..=n).map(|i| &x(n, i) * &(&GrassmannElement::one(n) + &a[i - 1])).collect(),
    )
}

/// ρ_{i,j;λx^α}: xᵢ ↦ xᵢ(1 + λx^α), xⱼ ↦ xⱼ(1 − λx^α).
pub fn rho<C: Coefficient>(n: usize, i: usize, j: usize, lambda: C, alpha: Mask) -> Endomorphism<C> {
    let t = GrassmannElement::monomial(n, alpha, lambda);
    let mut a = vec![GrassmannElement::zero(n); n];
    a[i - 1] = t.clone();
    a[j - 1] = -t;
    scaling(&a)
}

/// σ_λ: xᵢ ↦ xᵢ + λᵢx₁⋯xₙ.
pub fn top_shift<C: Coefficient>(n: usize, lambda: &[C]) -> Endomorphism<C> {
    gamma(&lambda.iter().map(|l| GrassmannElement::monomial(n, full_mask(n), l.clone())).collect::<Vec<_>>())
}

/// ω_u: e ↦ u e u⁻¹.
pub fn inner<C: Coefficient>(u: &GrassmannElement<C>) -> Result<Endomorphism<C>> {
    let n = u.n();
    let uinv = u.invert_unit()?;
    Ok(Endomorphism::from_images_unchecked((1..=n).map(|i| &(u * &x(n, i)) * &uinv).collect()))
}

/// ω_{1+a}. Panics unless 1 + a is a unit.
pub fn omega<C: Coefficient>(a: &GrassmannElement<C>) -> Endomorphism<C> {
    inner(&(&GrassmannElement::one(a.n()) + a)).expect("1 + a is a unit")
}
