//! Left skew partial derivatives ∂ᵢ, the projections φᵢ = 1 − xᵢ∂ᵢ and φ,
//! and Taylor reconstruction.

use crate::algebra::monomial::{bit, full_mask, indices, Mask};
use crate::algebra::{check_index, GrassmannElement};
use crate::coeff::Coefficient;
use crate::error::Result;

/// A multi-index α ⊆ {1..n}. The operator ∂^α is ∂ₙ^{αₙ}⋯∂₁^{α₁}: the
/// derivative with the smallest index acts first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MultiIndex(pub Mask);

impl MultiIndex {
    /// Applies ∂^α. Every use of ∂^α in the crate goes through here.
    pub fn apply_partials<C: Coefficient>(self, e: &GrassmannElement<C>) -> GrassmannElement<C> {
        let mut cur = e.clone();
        for i in indices(self.0) {
            if cur.is_zero() {
                break;
            }
            cur = partial(i, &cur);
        }
        cur
    }

    /// Applies ∂^α for a family of skew derivations indexed like the generators.
    pub fn apply_with<C: Coefficient, D>(self, e: &GrassmannElement<C>, mut d: D) -> GrassmannElement<C>
    where
        D: FnMut(usize, &GrassmannElement<C>) -> GrassmannElement<C>,
    {
        let mut cur = e.clone();
        for i in indices(self.0) {
            if cur.is_zero() {
                break;
            }
            cur = d(i, &cur);
        }
        cur
    }
}

/// Reconstruction strategy for [`taylor_reconstruct`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TaylorMode {
    /// Σ_α ∂^α(e)(0) x^α.
    AtZero,
    /// Σ_α φ(∂^α(e)) x^α.
    Projected,
}

/// ∂ᵢ without the range check.
pub(crate) fn partial<C: Coefficient>(i: usize, e: &GrassmannElement<C>) -> GrassmannElement<C> {
    let b = bit(i);
    let below = b - 1;
    GrassmannElement::from_terms(
        e.n(),
        e.iter().filter(|(m, _)| m & b != 0).map(|(m, c)| {
            let c = c.clone();
            (m & !b, if (m & below).count_ones() % 2 == 1 { -c } else { c })
        }),
    )
}

/// The left skew derivation with ∂ᵢ(xⱼ) = δᵢⱼ.
pub fn skew_partial<C: Coefficient>(i: usize, e: &GrassmannElement<C>) -> Result<GrassmannElement<C>> {
    check_index(e.n(), i)?;
    Ok(partial(i, e))
}

/// xᵢ·e.
pub fn left_mul_generator<C: Coefficient>(i: usize, e: &GrassmannElement<C>) -> GrassmannElement<C> {
    &GrassmannElement::generator(e.n(), i) * e
}

/// φᵢ(e) = (1 − xᵢ∂ᵢ)(e): drops the terms containing xᵢ.
pub fn phi_i<C: Coefficient>(i: usize, e: &GrassmannElement<C>) -> Result<GrassmannElement<C>> {
    check_index(e.n(), i)?;
    Ok(e - &left_mul_generator(i, &partial(i, e)))
}

/// φ(e), the constant term.
pub fn phi_projection<C: Coefficient>(e: &GrassmannElement<C>) -> C {
    e.constant_term()
}

/// φₙ⋯φ₁(e), composed from the single-index projections.
pub fn phi_composed<C: Coefficient>(e: &GrassmannElement<C>) -> GrassmannElement<C> {
    (1..=e.n()).fold(e.clone(), |acc, i| phi_i(i, &acc).expect("index in range"))
}

/// Σ_α (−1)^{|α|} x^α ∂^α(e).
pub fn phi_expansion<C: Coefficient>(e: &GrassmannElement<C>) -> GrassmannElement<C> {
    let n = e.n();
    let mut out = GrassmannElement::zero(n);
    for alpha in 0..=full_mask(n) {
        let d = MultiIndex(alpha).apply_partials(e);
        if d.is_zero() {
            continue;
        }
        let mut t = &GrassmannElement::monomial(n, alpha, C::one()) * &d;
        if alpha.count_ones() % 2 == 1 {
            t = -t;
        }
        out += &t;
    }
    out
}

/// Rebuilds `e` from its iterated derivatives.
pub fn taylor_reconstruct<C: Coefficient>(e: &GrassmannElement<C>, mode: TaylorMode) -> GrassmannElement<C> {
    let n = e.n();
    let mut out = GrassmannElement::zero(n);
    for alpha in 0..=full_mask(n) {
        let d = MultiIndex(alpha).apply_partials(e);
        let c = match mode {
            TaylorMode::AtZero => d.substitute_zero(full_mask(n)).constant_term(),
            TaylorMode::Projected => phi_projection(&d),
        };
        out += &GrassmannElement::monomial(n, alpha, c);
    }
    out
}

/// x₁⋯x_k as an element.
pub(crate) fn prefix_monomial<C: Coefficient>(n: usize, k: usize) -> GrassmannElement<C> {
    GrassmannElement::monomial(n, full_mask(k), C::one())
}

/// The operator x₁⋯xₙ∂ₙ⋯∂₁ + Σᵢ x₁⋯xᵢ∂ᵢ⋯∂₁(1 − x_{i+1}∂_{i+1}) + (1 − x₁∂₁)
/// applied to `e`; it is the identity.
pub fn identity_decomposition<C: Coefficient>(e: &GrassmannElement<C>) -> GrassmannElement<C> {
    let n = e.n();
    let mut out = &prefix_monomial(n, n) * &MultiIndex(full_mask(n)).apply_partials(e);
    for i in 1..n {
        let projected = phi_i(i + 1, e).expect("index in range");
        out += &(&prefix_monomial(n, i) * &MultiIndex(full_mask(i)).apply_partials(&projected));
    }
    out += &phi_i(1, e).expect("index in range");
    out
}
