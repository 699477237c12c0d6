//! Commutator and product identities in Aut(Λₙ), evaluated exactly.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{member, GroupId};
use crate::algebra::monomial::{bit, full_mask, mask_of};
use crate::algebra::{GrassmannElement, Mask};
use crate::coeff::Coefficient;
use crate::endo::{linear, omega, scaling, shift, top_shift, Endomorphism, Matrix};
use crate::error::{Error, Result};

/// The identities of the battery.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum IdentityTag {
    Gcom1,
    Gcom2,
    Xijam,
    Xijam1,
    Com1,
    Dvac1,
    Dvac2,
    G3ab,
    G4ab,
    G5ab,
    G6ab,
    Xipq1,
    Xipq2,
    Mul1,
    InvAbA,
    SlsA,
    Al2,
    NonNormal,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 18] = [
        IdentityTag::Gcom1,
        IdentityTag::Gcom2,
        IdentityTag::Xijam,
        IdentityTag::Xijam1,
        IdentityTag::Com1,
        IdentityTag::Dvac1,
        IdentityTag::Dvac2,
        IdentityTag::G3ab,
        IdentityTag::G4ab,
        IdentityTag::G5ab,
        IdentityTag::G6ab,
        IdentityTag::Xipq1,
        IdentityTag::Xipq2,
        IdentityTag::Mul1,
        IdentityTag::InvAbA,
        IdentityTag::SlsA,
        IdentityTag::Al2,
        IdentityTag::NonNormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityTag::Gcom1 => "gcom1",
            IdentityTag::Gcom2 => "gcom2",
            IdentityTag::Xijam => "xijam",
            IdentityTag::Xijam1 => "xijam1",
            IdentityTag::Com1 => "com1",
            IdentityTag::Dvac1 => "dvac1",
            IdentityTag::Dvac2 => "dvac2",
            IdentityTag::G3ab => "g3ab",
            IdentityTag::G4ab => "g4ab",
            IdentityTag::G5ab => "g5ab",
            IdentityTag::G6ab => "g6ab",
            IdentityTag::Xipq1 => "xipq1",
            IdentityTag::Xipq2 => "xipq2",
            IdentityTag::Mul1 => "mul1",
            IdentityTag::InvAbA => "invaba",
            IdentityTag::SlsA => "slsa",
            IdentityTag::Al2 => "al2",
            IdentityTag::NonNormal => "non-normal",
        }
    }

    /// The smallest generator count for which a case can be sampled.
    pub fn min_n(self) -> usize {
        match self {
            IdentityTag::Gcom1 => 5,
            IdentityTag::Gcom2 => 6,
            IdentityTag::Xijam => 7,
            IdentityTag::Xijam1 => 8,
            IdentityTag::Com1 => 6,
            IdentityTag::Dvac1 => 8,
            IdentityTag::Dvac2 => 9,
            IdentityTag::G3ab => 5,
            IdentityTag::G4ab => 6,
            IdentityTag::G5ab => 1,
            IdentityTag::G6ab => 3,
            IdentityTag::Xipq1 => 9,
            IdentityTag::Xipq2 => 7,
            IdentityTag::Mul1 | IdentityTag::InvAbA | IdentityTag::SlsA => 1,
            IdentityTag::Al2 => 2,
            IdentityTag::NonNormal => 5,
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.name() == lower)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown identity '{s}'")))
    }
}

/// ω_{1+a} γ_b σ_A with γ_b given by its full images bᵢ = γ_b(xᵢ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OgaParts<C> {
    pub a: GrassmannElement<C>,
    pub b: Vec<GrassmannElement<C>>,
    pub matrix: Matrix<C>,
}

impl<C: Coefficient> OgaParts<C> {
    fn gamma(&self) -> Endomorphism<C> {
        Endomorphism::from_images_unchecked(self.b.clone())
    }

    pub fn product(&self) -> Endomorphism<C> {
        omega(&self.a).then_apply(&self.gamma()).then_apply(&linear(&self.matrix))
    }

    fn validate(&self) -> Result<()> {
        let n = self.matrix.n();
        if self.a.n() != n || self.b.len() != n || self.b.iter().any(|e| e.n() != n) {
            return Err(Error::InvalidParameter("parts have different generator counts".into()));
        }
        if !self.a.is_odd() {
            return Err(Error::InvalidParameter("a must be odd".into()));
        }
        if self.matrix.inverse().is_none() {
            return Err(Error::InvalidParameter("A must be invertible".into()));
        }
        if !member(&self.gamma(), GroupId::Gamma)? {
            return Err(Error::InvalidParameter("b must be the images of an element of Γ".into()));
        }
        Ok(())
    }
}

/// One instance of an identity, with its index pattern and scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdentityCase<C> {
    /// [σ_{i,λxᵢxⱼx^α}, σ_{j,μxⱼx^β}] = σ_{i,−λμxᵢxⱼx^βx^α}.
    Gcom1 { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, lambda: C, mu: C },
    /// [σ_{i,λxᵢx^α}, σ_{i,μx^β}] = σ_{i,−λμx^βx^α}.
    Gcom2 { n: usize, i: usize, alpha: Mask, beta: Mask, lambda: C, mu: C },
    /// [ξ_{i,λxⱼx^α}, ξ_{j,μx^β}] = ξ_{i,−λμx^αx^β}.
    Xijam { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, lambda: C, mu: C },
    /// [ξ_{i,λx^α}, ξ_{j,μx^β}] = e.
    Xijam1 { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, lambda: C, mu: C },
    /// [ξ_{i,λxⱼx^α}, ξ_{j,μxᵢx^β}] = (xᵢ ↦ xᵢ(1−λμx^αx^β), xⱼ ↦ xⱼ(1+λμx^αx^β)).
    Com1 { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, lambda: C, mu: C },
    /// [ξ_{i,νxⱼx^γ}, [ξ_{i,λxⱼx^α}, ξ_{j,μxᵢx^β}]] = ξ_{i,−2λμνxⱼx^αx^βx^γ}.
    Dvac1 { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, gamma: Mask, lambda: C, mu: C, nu: C },
    /// [ξ_{i,νx^γ}, [ξ_{i,λxⱼx^α}, ξ_{j,μxᵢx^β}]] = ξ_{i,−λμνx^αx^βx^γ}.
    Dvac2 { n: usize, i: usize, j: usize, alpha: Mask, beta: Mask, gamma: Mask, lambda: C, mu: C, nu: C },
    /// A shift by x_{i₁}x_{i₂}(x_{i₃}x_{i₄})⋯x_{i_{2m+3}} as a left-nested commutator.
    G3ab { n: usize, idx: Vec<usize>, lambda: C },
    /// A shift by x_{i₁}x_{i₂}x_{i₃}(x_{i₄}x_{i₅})⋯ of xᵢ as a right-nested commutator.
    G4ab { n: usize, i: usize, idx: Vec<usize>, lambda: C },
    /// [σ, ω_{1+a}] = ω_{1+σ(a)−a} for a and σ(a) odd.
    G5ab { sigma: Endomorphism<C>, a: GrassmannElement<C> },
    /// ω_{1+λx_{i₁}⋯x_{i_{2m+1}}} as a right-nested commutator ending in ω_{1+λx_{i₁}}.
    G6ab { n: usize, idx: Vec<usize>, lambda: C },
    /// ξ_{i,λ(x_{k₁}x_{l₁})⋯x_px_qx_r} as an alternating nested commutator, evenly many pairs.
    Xipq1 { n: usize, i: usize, j: usize, pairs: Vec<(usize, usize)>, pqr: [usize; 3], lambda: C },
    /// The same with oddly many pairs.
    Xipq2 { n: usize, i: usize, j: usize, pairs: Vec<(usize, usize)>, pqr: [usize; 3], lambda: C },
    /// The product rule in coordinates (a, b, A).
    Mul1 { left: OgaParts<C>, right: OgaParts<C> },
    /// The inverse in coordinates (a, b, A).
    InvAbA { parts: OgaParts<C> },
    /// σ⁻¹σ_λσ = σ_{Aλ/det A}.
    SlsA { sigma: Endomorphism<C>, lambda: Vec<C> },
    /// σ_Aσ_λ·σ_Bσ_μ = σ_{BA}σ_{Bλ/det B+μ} in Aut(Λ₂).
    Al2 { a: Matrix<C>, lambda: [C; 2], b: Matrix<C>, mu: [C; 2] },
    /// The explicit σ ∈ Γ and τ ∈ Σ at n = 5 with στσ⁻¹ ∉ Σ.
    NonNormal,
}

fn mono<C: Coefficient>(n: usize, factors: &[Mask], c: C) -> GrassmannElement<C> {
    factors.iter().fold(GrassmannElement::constant(n, c), |acc, &m| &acc * &GrassmannElement::monomial(n, m, C::one()))
}

fn sh<C: Coefficient>(n: usize, i: usize, factors: &[Mask], c: C) -> Endomorphism<C> {
    shift(i, &mono(n, factors, c))
}

struct Constraint {
    ok: bool,
    what: &'static str,
}

fn require(cs: &[Constraint]) -> Result<()> {
    match cs.iter().find(|c| !c.ok) {
        Some(c) => Err(Error::InvalidParameter(c.what.into())),
        None => Ok(()),
    }
}

fn c(ok: bool, what: &'static str) -> Constraint {
    Constraint { ok, what }
}

fn indices_ok(n: usize, idx: &[usize]) -> bool {
    idx.iter().all(|k| (1..=n).contains(k)) && mask_of(idx).count_ones() as usize == idx.len()
}

fn masks_ok(n: usize, masks: &[Mask], singles: &[usize]) -> bool {
    let mut seen = 0;
    let all = masks.iter().copied().chain(singles.iter().map(|&k| bit(k)));
    for m in all {
        if m & !full_mask(n) != 0 || m & seen != 0 {
            return false;
        }
        seen |= m;
    }
    singles.iter().all(|k| (1..=n).contains(k))
}

fn even(m: Mask) -> bool {
    m.count_ones() % 2 == 0
}

fn nested_right<C: Coefficient>(outer: &[Endomorphism<C>], inner: Endomorphism<C>) -> Result<Endomorphism<C>> {
    outer.iter().rev().try_fold(inner, |acc, g| g.commutator(&acc))
}

/// Evaluates both sides exactly. Parameters outside an identity's
/// hypotheses give `InvalidParameter`.
pub fn check_identity<C: Coefficient>(case: &IdentityCase<C>) -> Result<bool> {
    match case {
        IdentityCase::Gcom1 { n, i, j, alpha, beta, lambda, mu } => {
            let (n, i, j, a, b) = (*n, *i, *j, *alpha, *beta);
            require(&[
                c(masks_ok(n, &[a, b], &[i, j]), "indices must be distinct and in range"),
                c(!even(a) && even(b) && b != 0, "α odd, β even and nonempty"),
            ])?;
            let lhs = sh(n, i, &[bit(i), bit(j), a], lambda.clone()).commutator(&sh(n, j, &[bit(j), b], mu.clone()))?;
            let rhs = sh(n, i, &[bit(i), bit(j), b, a], -(lambda.clone() * mu.clone()));
            Ok(lhs == rhs)
        }
        IdentityCase::Gcom2 { n, i, alpha, beta, lambda, mu } => {
            let (n, i, a, b) = (*n, *i, *alpha, *beta);
            require(&[
                c(masks_ok(n, &[a, b], &[i]), "indices must be distinct and in range"),
                c(even(a) && a != 0 && !even(b) && b.count_ones() >= 3, "α even and nonempty, β odd with |β| ≥ 3"),
            ])?;
            let lhs = sh(n, i, &[bit(i), a], lambda.clone()).commutator(&sh(n, i, &[b], mu.clone()))?;
            let rhs = sh(n, i, &[b, a], -(lambda.clone() * mu.clone()));
            Ok(lhs == rhs)
        }
        IdentityCase::Xijam { n, i, j, alpha, beta, lambda, mu } => {
            let (n, i, j, a, b) = (*n, *i, *j, *alpha, *beta);
            require(&[
                c(masks_ok(n, &[a, b], &[i, j]), "indices must be distinct and in range"),
                c(even(a) && !even(b), "α even, β odd"),
                c(a.count_ones() + 1 >= 3 && b.count_ones() >= 3, "shifts must have degree ≥ 3"),
            ])?;
            let lhs = sh(n, i, &[bit(j), a], lambda.clone()).commutator(&sh(n, j, &[b], mu.clone()))?;
            let rhs = sh(n, i, &[a, b], -(lambda.clone() * mu.clone()));
            Ok(lhs == rhs)
        }
        IdentityCase::Xijam1 { n, i, j, alpha, beta, lambda, mu } => {
            let (n, i, j, a, b) = (*n, *i, *j, *alpha, *beta);
            require(&[
                c(masks_ok(n, &[a, b], &[i, j]), "indices must be distinct and in range"),
                c(!even(a) && !even(b) && a.count_ones() >= 3 && b.count_ones() >= 3, "α, β odd with size ≥ 3"),
            ])?;
            let lhs = sh(n, i, &[a], lambda.clone()).commutator(&sh(n, j, &[b], mu.clone()))?;
            Ok(lhs.is_identity())
        }
        IdentityCase::Com1 { n, i, j, alpha, beta, lambda, mu } => {
            let (n, i, j, a, b) = (*n, *i, *j, *alpha, *beta);
            require(&[
                c(masks_ok(n, &[a, b], &[i, j]), "indices must be distinct and in range"),
                c(even(a) && even(b) && a != 0 && b != 0, "α, β even and nonempty"),
            ])?;
            let lhs = sh(n, i, &[bit(j), a], lambda.clone()).commutator(&sh(n, j, &[bit(i), b], mu.clone()))?;
            let t = mono(n, &[a, b], lambda.clone() * mu.clone());
            let mut s = vec![GrassmannElement::zero(n); n];
            s[i - 1] = -t.clone();
            s[j - 1] = t;
            Ok(lhs == scaling(&s))
        }
        IdentityCase::Dvac1 { n, i, j, alpha, beta, gamma, lambda, mu, nu }
        | IdentityCase::Dvac2 { n, i, j, alpha, beta, gamma, lambda, mu, nu } => {
            let first = matches!(case, IdentityCase::Dvac1 { .. });
            let (n, i, j, a, b, g) = (*n, *i, *j, *alpha, *beta, *gamma);
            require(&[
                c(masks_ok(n, &[a, b, g], &[i, j]), "indices must be distinct and in range"),
                c(even(a) && even(b) && a != 0 && b != 0, "α, β even and nonempty"),
                c(if first { even(g) && g != 0 } else { !even(g) && g.count_ones() >= 3 }, "γ has the wrong parity or size"),
            ])?;
            let inner = sh(n, i, &[bit(j), a], lambda.clone()).commutator(&sh(n, j, &[bit(i), b], mu.clone()))?;
            let lmn = lambda.clone() * mu.clone() * nu.clone();
            let (lhs, rhs) = if first {
                (
                    sh(n, i, &[bit(j), g], nu.clone()).commutator(&inner)?,
                    sh(n, i, &[bit(j), a, b, g], -(C::from_i64(2) * lmn)),
                )
            } else {
                (sh(n, i, &[g], nu.clone()).commutator(&inner)?, sh(n, i, &[a, b, g], -lmn))
            };
            Ok(lhs == rhs)
        }
        IdentityCase::G3ab { n, idx, lambda } => {
            let n = *n;
            require(&[
                c(indices_ok(n, idx), "indices must be distinct and in range"),
                c(idx.len() >= 3 && idx.len() % 2 == 1, "need 2m + 3 indices"),
            ])?;
            let m = (idx.len() - 3) / 2;
            let x = |k: usize| bit(idx[k - 1]);
            let mut lhs_factors = vec![x(1), x(2)];
            lhs_factors.extend((3..=2 * m + 2).map(x));
            lhs_factors.push(x(2 * m + 3));
            let lhs = sh(n, idx[0], &lhs_factors, lambda.clone());
            let mut rhs = sh(n, idx[0], &[x(1), x(2), x(2 * m + 3)], lambda.clone());
            for k in (1..=m).rev() {
                let g = sh(n, idx[1], &[x(2), x(2 * k + 1), x(2 * k + 2)], -C::one());
                rhs = rhs.commutator(&g)?;
            }
            Ok(lhs == rhs)
        }
        IdentityCase::G4ab { n, i, idx, lambda } => {
            let (n, i) = (*n, *i);
            let mut all = idx.clone();
            all.push(i);
            require(&[
                c(indices_ok(n, &all), "indices must be distinct and in range"),
                c(idx.len() >= 5 && idx.len() % 2 == 1, "need 2m + 1 indices with m ≥ 2"),
            ])?;
            let m = (idx.len() - 1) / 2;
            let x = |k: usize| bit(idx[k - 1]);
            let lhs = sh(n, i, &(1..=2 * m + 1).map(x).collect::<Vec<_>>(), lambda.clone());
            let mut outer = vec![sh(n, i, &[bit(i), x(2 * m), x(2 * m + 1)], -lambda.clone())];
            outer.extend((2..m).rev().map(|k| sh(n, i, &[bit(i), x(2 * k), x(2 * k + 1)], -C::one())));
            let rhs = nested_right(&outer, sh(n, i, &[x(1), x(2), x(3)], C::one()))?;
            Ok(lhs == rhs)
        }
        IdentityCase::G5ab { sigma, a } => {
            require(&[
                c(sigma.n() == a.n(), "σ and a must share n"),
                c(a.is_odd(), "a must be odd"),
                c(sigma.is_automorphism(), "σ must be an automorphism"),
                c(sigma.act(a).is_odd(), "σ(a) must be odd"),
            ])?;
            let lhs = sigma.commutator(&omega(a))?;
            Ok(lhs == omega(&(&sigma.act(a) - a)))
        }
        IdentityCase::G6ab { n, idx, lambda } => {
            let n = *n;
            require(&[
                c(indices_ok(n, idx), "indices must be distinct and in range"),
                c(idx.len() % 2 == 1, "need 2m + 1 indices"),
            ])?;
            let m = (idx.len() - 1) / 2;
            let x = |k: usize| bit(idx[k - 1]);
            let lhs = omega(&mono(n, &(1..=2 * m + 1).map(x).collect::<Vec<_>>(), lambda.clone()));
            let outer: Vec<_> = (1..=m).map(|k| sh(n, idx[0], &[x(1), x(2 * k), x(2 * k + 1)], C::one())).collect();
            let rhs = nested_right(&outer, omega(&mono(n, &[x(1)], lambda.clone())))?;
            Ok(lhs == rhs)
        }
        IdentityCase::Xipq1 { n, i, j, pairs, pqr, lambda } | IdentityCase::Xipq2 { n, i, j, pairs, pqr, lambda } => {
            let first = matches!(case, IdentityCase::Xipq1 { .. });
            let (n, i, j) = (*n, *i, *j);
            let mut all = vec![i, j];
            all.extend(pairs.iter().flat_map(|&(k, l)| [k, l]));
            all.extend(pqr);
            require(&[
                c(indices_ok(n, &all), "indices must be distinct and in range"),
                c(pairs.len() % 2 == if first { 0 } else { 1 }, "wrong parity of the pair count"),
            ])?;
            let pair_masks: Vec<Mask> = pairs.iter().map(|&(k, l)| bit(k) | bit(l)).collect();
            let tail = [bit(pqr[0]), bit(pqr[1]), bit(pqr[2])];
            let mut lhs_factors = pair_masks.clone();
            lhs_factors.extend(tail);
            let lhs = sh(n, i, &lhs_factors, lambda.clone());
            let outer: Vec<_> = pair_masks
                .iter()
                .enumerate()
                .map(|(k, &pm)| {
                    if k % 2 == 0 {
                        sh(n, i, &[bit(j), pm], C::one())
                    } else {
                        sh(n, j, &[bit(i), pm], C::one())
                    }
                })
                .collect();
            let last = if first { sh(n, i, &tail, lambda.clone()) } else { sh(n, j, &tail, -lambda.clone()) };
            Ok(lhs == nested_right(&outer, last)?)
        }
        IdentityCase::Mul1 { left, right } => {
            left.validate()?;
            right.validate()?;
            let n = left.matrix.n();
            if right.matrix.n() != n {
                return Err(Error::InvalidParameter("factors have different generator counts".into()));
            }
            let g = left.gamma().then_apply(&linear(&left.matrix));
            let a = &left.a + &g.act(&right.a);
            let ainv = left.matrix.inverse().expect("validated");
            let sab: Vec<_> = right.b.iter().map(|e| linear(&left.matrix).act(e)).collect();
            let c_tuple = ainv.mul_column(&sab);
            let composed: Vec<_> = c_tuple.iter().map(|ci| left.gamma().act(ci)).collect();
            let rhs = OgaParts { a, b: composed, matrix: right.matrix.mul(&left.matrix) };
            Ok(left.product().then_apply(&right.product()) == rhs.product())
        }
        IdentityCase::InvAbA { parts } => {
            parts.validate()?;
            let ainv = parts.matrix.inverse().expect("validated");
            let b_prime = parts.gamma().inv()?;
            let s_ainv = linear(&ainv);
            let a = -s_ainv.act(&b_prime.act(&parts.a));
            let moved: Vec<_> = b_prime.images().iter().map(|e| s_ainv.act(e)).collect();
            let rhs = OgaParts { a, b: parts.matrix.mul_column(&moved), matrix: ainv };
            Ok(parts.product().inv()? == rhs.product())
        }
        IdentityCase::SlsA { sigma, lambda } => {
            let n = sigma.n();
            require(&[
                c(lambda.len() == n, "λ must have n entries"),
                c(sigma.is_automorphism(), "σ must be an automorphism"),
                c(sigma.images().iter().all(|e| e.constant_term().is_zero()), "σ must fix the augmentation ideal"),
            ])?;
            let a = sigma.linear_part();
            let dinv = a.det().inv().expect("automorphism");
            let target: Vec<C> = a.mul_vec(lambda).into_iter().map(|v| v * dinv.clone()).collect();
            let lhs = sigma.inv()?.then_apply(&top_shift(n, lambda)).then_apply(sigma);
            Ok(lhs == top_shift(n, &target))
        }
        IdentityCase::Al2 { a, lambda, b, mu } => {
            require(&[
                c(a.n() == 2 && b.n() == 2, "matrices must be 2 × 2"),
                c(a.inverse().is_some() && b.inverse().is_some(), "matrices must be invertible"),
            ])?;
            let dinv = b.det().inv().expect("invertible");
            let bl = b.mul_vec(lambda);
            let nu: Vec<C> = bl.into_iter().zip(mu).map(|(x, m)| x * dinv.clone() + m.clone()).collect();
            let lhs = linear(a).then_apply(&top_shift(2, lambda)).then_apply(&linear(b)).then_apply(&top_shift(2, mu));
            Ok(lhs == linear(&b.mul(a)).then_apply(&top_shift(2, &nu)))
        }
        IdentityCase::NonNormal => {
            let n = 5;
            let x23 = GrassmannElement::monomial(n, mask_of(&[2, 3]), C::one());
            let mut s = vec![GrassmannElement::zero(n); n];
            s[0] = x23.clone();
            let sigma = scaling(&s);
            let tau = shift(2, &GrassmannElement::monomial(n, mask_of(&[1, 4, 5]), C::one()));
            let j = sigma.jacobian()?.det;
            let conj = sigma.then_apply(&tau).then_apply(&sigma.inv()?);
            Ok(member(&sigma, GroupId::Gamma)?
                && member(&tau, GroupId::Sigma)?
                && j == &GrassmannElement::one(n) + &x23
                && tau.act(&j) != j
                && !member(&conj, GroupId::Sigma)?)
        }
    }
}

fn take(pool: &mut Vec<usize>, k: usize) -> Vec<usize> {
    pool.split_off(pool.len() - k)
}

/// A random size in `min..=max` with the given parity.
fn size<R: Rng + ?Sized>(rng: &mut R, min: usize, max: usize, odd: bool) -> usize {
    let options: Vec<usize> = (min..=max).filter(|s| (s % 2 == 1) == odd).collect();
    *options.choose(rng).expect("room was checked")
}

fn unit<C: Coefficient, R: Rng + ?Sized>(rng: &mut R) -> C {
    C::sample_nonzero(rng)
}

fn random_parts<C: Coefficient, R: Rng + ?Sized>(n: usize, rng: &mut R) -> OgaParts<C> {
    let a = GrassmannElement::random(n, rng, 0.3, |m| m.count_ones() % 2 == 1);
    let shifts = crate::sample::gamma_shifts::<C, R>(n, rng, 0.3);
    let b = shifts.iter().enumerate().map(|(k, s)| &GrassmannElement::generator(n, k + 1) + s).collect();
    OgaParts { a, b, matrix: Matrix::random_invertible(n, rng) }
}

/// A random instance of `tag` at n generators.
pub fn sample_case<C: Coefficient, R: Rng + ?Sized>(tag: IdentityTag, n: usize, rng: &mut R) -> Result<IdentityCase<C>> {
    if n < tag.min_n() || n > 16 {
        return Err(Error::InvalidParameter(format!("{tag} needs {} ≤ n ≤ 16", tag.min_n())));
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    pool.shuffle(rng);
    let (i, j) = (pool[n - 1], pool[n.saturating_sub(2)]);
    pool.truncate(n.saturating_sub(2));
    let pool = &mut pool;
    let mask = |pool: &mut Vec<usize>, k: usize| mask_of(&take(pool, k));
    Ok(match tag {
        IdentityTag::Gcom1 => {
            let room = n - 2;
            let sb = size(rng, 2, room - 1, false);
            let sa = size(rng, 1, room - sb, true);
            let (alpha, beta) = (mask(pool, sa), mask(pool, sb));
            IdentityCase::Gcom1 { n, i, j, alpha, beta, lambda: unit(rng), mu: unit(rng) }
        }
        IdentityTag::Gcom2 => {
            pool.push(j);
            let room = n - 1;
            let sb = size(rng, 3, room - 2, true);
            let sa = size(rng, 2, room - sb, false);
            let (alpha, beta) = (mask(pool, sa), mask(pool, sb));
            IdentityCase::Gcom2 { n, i, alpha, beta, lambda: unit(rng), mu: unit(rng) }
        }
        IdentityTag::Xijam => {
            let room = n - 2;
            let sb = size(rng, 3, room - 2, true);
            let sa = size(rng, 2, room - sb, false);
            let (alpha, beta) = (mask(pool, sa), mask(pool, sb));
            IdentityCase::Xijam { n, i, j, alpha, beta, lambda: unit(rng), mu: unit(rng) }
        }
        IdentityTag::Xijam1 => {
            let (alpha, beta) = (mask(pool, 3), mask(pool, 3));
            IdentityCase::Xijam1 { n, i, j, alpha, beta, lambda: unit(rng), mu: unit(rng) }
        }
        IdentityTag::Com1 => {
            let room = n - 2;
            let sb = size(rng, 2, room - 2, false);
            let sa = size(rng, 2, room - sb, false);
            let (alpha, beta) = (mask(pool, sa), mask(pool, sb));
            IdentityCase::Com1 { n, i, j, alpha, beta, lambda: unit(rng), mu: unit(rng) }
        }
        IdentityTag::Dvac1 | IdentityTag::Dvac2 => {
            let (alpha, beta) = (mask(pool, 2), mask(pool, 2));
            let gamma = if tag == IdentityTag::Dvac1 { mask(pool, 2) } else { mask(pool, 3) };
            let (lambda, mu, nu) = (unit(rng), unit(rng), unit(rng));
            if tag == IdentityTag::Dvac1 {
                IdentityCase::Dvac1 { n, i, j, alpha, beta, gamma, lambda, mu, nu }
            } else {
                IdentityCase::Dvac2 { n, i, j, alpha, beta, gamma, lambda, mu, nu }
            }
        }
        IdentityTag::G3ab => {
            let len = size(rng, 5, n, true);
            let mut idx = vec![i, j];
            idx.extend(take(pool, len - 2));
            IdentityCase::G3ab { n, idx, lambda: unit(rng) }
        }
        IdentityTag::G4ab => {
            let len = size(rng, 5, n - 1, true);
            let mut idx = vec![j];
            idx.extend(take(pool, len - 1));
            IdentityCase::G4ab { n, i, idx, lambda: unit(rng) }
        }
        IdentityTag::G5ab => {
            let sigma = crate::sample::gamma_gl(n, rng);
            let a = GrassmannElement::random(n, rng, 0.3, |m| m.count_ones() % 2 == 1);
            IdentityCase::G5ab { sigma, a }
        }
        IdentityTag::G6ab => {
            let len = size(rng, 3, n, true);
            let mut idx = vec![i, j];
            idx.extend(take(pool, len - 2));
            IdentityCase::G6ab { n, idx, lambda: unit(rng) }
        }
        IdentityTag::Xipq1 | IdentityTag::Xipq2 => {
            let first = tag == IdentityTag::Xipq1;
            let max_pairs = (n - 5) / 2;
            let count = size(rng, if first { 2 } else { 1 }, max_pairs, !first);
            let pairs = (0..count)
                .map(|_| {
                    let v = take(pool, 2);
                    (v[0], v[1])
                })
                .collect();
            let t = take(pool, 3);
            let pqr = [t[0], t[1], t[2]];
            if first {
                IdentityCase::Xipq1 { n, i, j, pairs, pqr, lambda: unit(rng) }
            } else {
                IdentityCase::Xipq2 { n, i, j, pairs, pqr, lambda: unit(rng) }
            }
        }
        IdentityTag::Mul1 => IdentityCase::Mul1 { left: random_parts(n, rng), right: random_parts(n, rng) },
        IdentityTag::InvAbA => IdentityCase::InvAbA { parts: random_parts(n, rng) },
        IdentityTag::SlsA => {
            let sigma = crate::sample::full_group(n, rng);
            IdentityCase::SlsA { sigma, lambda: (0..n).map(|_| C::sample(rng)).collect() }
        }
        IdentityTag::Al2 => IdentityCase::Al2 {
            a: Matrix::random_invertible(2, rng),
            lambda: [C::sample(rng), C::sample(rng)],
            b: Matrix::random_invertible(2, rng),
            mu: [C::sample(rng), C::sample(rng)],
        },
        IdentityTag::NonNormal => IdentityCase::NonNormal,
    })
}
