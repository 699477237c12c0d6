//! Seeded random elements of the standard subgroups, for tests and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::monomial::bit;
use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;
use crate::endo::{gamma, inner, linear, rho, scaling, shift, Endomorphism, Matrix};
use crate::linsolve::AvoidanceFunctions;

/// Random odd shifts b₁, …, bₙ with every term of degree at least 3.
pub fn gamma_shifts<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R, density: f64) -> Vec<GrassmannElement<C>> {
    (0..n)
        .map(|_| GrassmannElement::random(n, rng, density, |m| m.count_ones() >= 3 && m.count_ones() % 2 == 1))
        .collect()
}

/// A random element γ_b of the subgroup fixing the odd part modulo 𝔪³.
pub fn gamma_element<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    gamma(&gamma_shifts(n, rng, 0.3))
}

/// A random σ_A γ_b.
pub fn gamma_gl<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    let a = Matrix::random_invertible(n, rng);
    linear(&a).then_apply(&gamma_element(n, rng))
}

/// A random ω_u with u = 1 + a, a ∈ 𝔪.
pub fn inner_element<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    let a = GrassmannElement::random(n, rng, 0.3, |m| m != 0);
    inner(&(&GrassmannElement::one(n) + &a)).expect("1 + a is a unit")
}

/// A random unipotent automorphism γ_b ω_u.
pub fn unipotent<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    gamma_element(n, rng).then_apply(&inner_element(n, rng))
}

/// A random element of the full group: σ_A γ_b ω_u.
pub fn full_group<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    gamma_gl(n, rng).then_apply(&inner_element(n, rng))
}

fn free_even_parts<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R, min_degree: usize, density: f64) -> Vec<GrassmannElement<C>> {
    (1..=n)
        .map(|i| {
            GrassmannElement::random(n, rng, density, |m| {
                m & bit(i) == 0 && m.count_ones() % 2 == 0 && m.count_ones() as usize >= min_degree.max(2)
            })
        })
        .collect()
}

/// A random element of Φ ∩ U^k: xᵢ ↦ xᵢ(1 + aᵢ) with aᵢ even, free of xᵢ, of degree ≥ k − 1.
pub fn phi_element<C: Coefficient, R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Endomorphism<C> {
    scaling(&free_even_parts(n, rng, k.saturating_sub(1), 0.3))
}

/// A random element of Γ ∩ U^k.
pub fn gamma_pow_element<C: Coefficient, R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Endomorphism<C> {
    let b: Vec<_> = (0..n)
        .map(|_| {
            GrassmannElement::random(n, rng, 0.3, |m| {
                let d = m.count_ones() as usize;
                d >= 3 && d >= k && d % 2 == 1
            })
        })
        .collect();
    gamma(&b)
}

/// A random product of ρ-generators over all degrees, an element of Σ′ (n ≥ 4).
pub fn sigma_prime_element<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    let mut out = Endomorphism::identity(n);
    for _ in 0..n {
        let s = rng.gen_range(1..=(n - 1) / 2);
        let j = AvoidanceFunctions::new(n, s).expect("n ≥ 3");
        let i = rng.gen_range(1..n);
        let domain = j.domain(i);
        if let Some(&alpha) = domain.choose(rng) {
            out = out.then_apply(&rho(n, i, j.j(i, alpha), C::sample_nonzero(rng), alpha));
        }
    }
    out
}

/// A random product of single-coordinate shifts ξ_{i,b}, bᵢ odd of degree ≥ 3 and free of xᵢ.
pub fn xi_word<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    let mut out = Endomorphism::identity(n);
    for _ in 0..3 {
        let i = rng.gen_range(1..=n);
        let b = GrassmannElement::random(n, rng, 0.3, |m| m & bit(i) == 0 && m.count_ones() >= 3 && m.count_ones() % 2 == 1);
        out = out.then_apply(&shift(i, &b));
    }
    out
}

/// A random element of Σ = Σ′Σ″ (n ≥ 4).
pub fn sigma_element<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endomorphism<C> {
    sigma_prime_element(n, rng).then_apply(&xi_word(n, rng))
}

/// A random element of Γ_{2s} = Φ^{2s+1}Σ (n ≥ 4).
pub fn gamma_asc_element<C: Coefficient, R: Rng + ?Sized>(n: usize, s: usize, rng: &mut R) -> Endomorphism<C> {
    phi_element(n, 2 * s + 1, rng).then_apply(&sigma_element(n, rng))
}
