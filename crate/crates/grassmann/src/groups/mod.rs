//! Subgroups of Aut(Λₙ): membership, factorizations, Jacobian preimages,
//! generators, dimension counts and the identity battery.

mod dims;
mod factor;
mod generators;
mod identities;
mod preimage;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use dims::{dim_by_coordinates, dim_formula, pi_n, DimTarget};
pub use factor::{
    decompose_gamma, decompose_layers, decompose_omega_gamma_linear, decompose_sigma_prime, decompose_unipotent,
    phi_prime, xi_product, Factor, FactoredAutomorphism, UFactor, XiFactor,
};
pub use generators::{enumerate_generators, generated_lie_rank, GeneratorDescriptor};
pub use identities::{check_identity, sample_case, IdentityCase, IdentityTag, OgaParts};
pub use preimage::{jacobian_preimage, jacobian_preimage_mod_top, Preimage};

use crate::algebra::monomial::full_mask;
use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;
use crate::endo::{omega, Endomorphism};
use crate::error::{Error, Result};
use crate::linsolve::{layer_of, solve_xi_system};
use crate::skewcalc::partial;

/// The subgroups of G = Aut(Λₙ) with decidable membership.
///
/// Parameterized tags carry the exponent or modulus as written in the group's
/// name: `GammaPow(i)` is Γⁱ, `GammaAsc(2s)` is Γ_{2s}, `PhiPow(2s+1)` is Φ^{2s+1}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GroupId {
    Omega,
    OmegaS(usize),
    Gamma,
    GammaPow(usize),
    GammaAsc(usize),
    GammaGraded(usize),
    U,
    UPow(usize),
    Phi,
    PhiI(usize),
    PhiPrime,
    PhiPow(usize),
    PhiPrimeLayer(usize),
    Sigma,
    SigmaPrime,
    SigmaPrimePow(usize),
    SigmaDoublePrime,
    GEv,
    GOd,
    GZs(usize),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Omega => write!(f, "omega"),
            GroupId::OmegaS(s) => write!(f, "omega-s:{s}"),
            GroupId::Gamma => write!(f, "gamma"),
            GroupId::GammaPow(i) => write!(f, "gamma-pow:{i}"),
            GroupId::GammaAsc(k) => write!(f, "gamma-asc:{k}"),
            GroupId::GammaGraded(s) => write!(f, "gamma-graded:{s}"),
            GroupId::U => write!(f, "u"),
            GroupId::UPow(i) => write!(f, "u-pow:{i}"),
            GroupId::Phi => write!(f, "phi"),
            GroupId::PhiI(i) => write!(f, "phi-i:{i}"),
            GroupId::PhiPrime => write!(f, "phi-prime"),
            GroupId::PhiPow(k) => write!(f, "phi-pow:{k}"),
            GroupId::PhiPrimeLayer(k) => write!(f, "phi-prime-layer:{k}"),
            GroupId::Sigma => write!(f, "sigma"),
            GroupId::SigmaPrime => write!(f, "sigma-prime"),
            GroupId::SigmaPrimePow(j) => write!(f, "sigma-prime-pow:{j}"),
            GroupId::SigmaDoublePrime => write!(f, "sigma-double-prime"),
            GroupId::GEv => write!(f, "g-ev"),
            GroupId::GOd => write!(f, "g-od"),
            GroupId::GZs(s) => write!(f, "g-zs:{s}"),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace('_', "-");
        let (name, arg) = match lower.split_once(':') {
            Some((name, arg)) => {
                let v: usize =
                    arg.parse().map_err(|_| Error::InvalidParameter(format!("'{arg}' is not a group parameter")))?;
                (name.to_string(), Some(v))
            }
            None => (lower, None),
        };
        let need = |f: fn(usize) -> GroupId| {
            arg.map(f).ok_or_else(|| Error::InvalidParameter(format!("group '{name}' needs a parameter, as in '{name}:3'")))
        };
        let plain = |g: GroupId| {
            if arg.is_some() {
                Err(Error::InvalidParameter(format!("group '{name}' takes no parameter")))
            } else {
                Ok(g)
            }
        };
        match name.as_str() {
            "omega" => plain(GroupId::Omega),
            "omega-s" => need(GroupId::OmegaS),
            "gamma" => plain(GroupId::Gamma),
            "gamma-pow" => need(GroupId::GammaPow),
            "gamma-asc" => need(GroupId::GammaAsc),
            "gamma-graded" => need(GroupId::GammaGraded),
            "u" => plain(GroupId::U),
            "u-pow" => need(GroupId::UPow),
            "phi" => plain(GroupId::Phi),
            "phi-i" => need(GroupId::PhiI),
            "phi-prime" => plain(GroupId::PhiPrime),
            "phi-pow" => need(GroupId::PhiPow),
            "phi-prime-layer" => need(GroupId::PhiPrimeLayer),
            "sigma" => plain(GroupId::Sigma),
            "sigma-prime" => plain(GroupId::SigmaPrime),
            "sigma-prime-pow" => need(GroupId::SigmaPrimePow),
            "sigma-double-prime" => plain(GroupId::SigmaDoublePrime),
            "g-ev" => plain(GroupId::GEv),
            "g-od" => plain(GroupId::GOd),
            "g-zs" => need(GroupId::GZs),
            _ => Err(Error::InvalidParameter(format!("unknown group '{name}'"))),
        }
    }
}

impl GroupId {
    /// Rejects parameters outside the range where the group is defined.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidParameter(what));
        match *self {
            GroupId::OmegaS(s) if s % 2 == 0 || s == 0 || s > n => bad(format!("Ω(s) needs odd s in 1..={n}")),
            GroupId::GammaGraded(s) if s % 2 == 1 || s == 0 || s > 2 * (n / 2) => {
                bad(format!("Γ(s) needs even s in 2..={}", 2 * (n / 2)))
            }
            GroupId::GammaAsc(k) if k % 2 == 1 || k == 0 => bad("Γ_{2s} needs a positive even index".into()),
            GroupId::GammaPow(i) | GroupId::UPow(i) | GroupId::SigmaPrimePow(i) if i < 2 => {
                bad("filtration index must be at least 2".into())
            }
            GroupId::PhiPow(k) if k < 3 || k % 2 == 0 => bad("Φ^{2s+1} needs odd exponent at least 3".into()),
            GroupId::PhiPrimeLayer(k) if n < 4 || k < 3 || k % 2 == 0 || (k - 1) / 2 > (n - 1) / 2 => {
                bad(format!("Φ′^{{2s+1}} needs n ≥ 4 and s in 1..={}", (n.max(1) - 1) / 2))
            }
            GroupId::PhiI(i) if i == 0 || i > n => bad(format!("Φ(i) needs i in 1..={n}")),
            GroupId::GZs(s) if s == 0 => bad("G_{Zs} needs s ≥ 1".into()),
            _ => Ok(()),
        }
    }
}

/// The outcome of a membership test, with the inner-automorphism argument
/// when the group is Ω or Ω(s).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Membership<C> {
    pub member: bool,
    pub witness: Option<GrassmannElement<C>>,
}

fn diffs<C: Coefficient>(sigma: &Endomorphism<C>) -> Vec<GrassmannElement<C>> {
    let n = sigma.n();
    (1..=n).map(|i| sigma.image(i) - &GrassmannElement::generator(n, i)).collect()
}

/// σ(xᵢ) − xᵢ ∈ 𝔪^k for all i.
fn in_u_pow<C: Coefficient>(sigma: &Endomorphism<C>, k: usize) -> bool {
    diffs(sigma).iter().all(|d| d.in_power_of_max_ideal(k))
}

fn in_gamma<C: Coefficient>(sigma: &Endomorphism<C>) -> bool {
    diffs(sigma).iter().all(|d| d.is_odd() && d.in_power_of_max_ideal(3))
}

fn images_in_own_ideal<C: Coefficient>(sigma: &Endomorphism<C>) -> bool {
    (1..=sigma.n()).all(|i| sigma.image(i).in_ideal_of(i))
}

fn in_sigma<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<bool> {
    Ok(in_gamma(sigma) && sigma.jacobian()?.det.is_one())
}

/// The odd a (degrees 1..n−1) with σ = ω_{1+a}, if one exists.
pub fn inner_witness<C: Coefficient>(sigma: &Endomorphism<C>) -> Option<GrassmannElement<C>> {
    let n = sigma.n();
    if !in_u_pow(sigma, 2) {
        return None;
    }
    let half = C::half();
    let u: Vec<_> = diffs(sigma).iter().map(|d| -d.scale(&half)).collect();
    let family = solve_xi_system(&u).ok()?;
    let a = family.particular.odd_part().filter(|m| m != full_mask(n));
    (omega(&a) == *sigma).then_some(a)
}

/// Degree-d part of ∂ᵢσ(xᵢ) − 1, for σ with σ(xᵢ) ∈ (xᵢ).
pub(crate) fn scaling_part<C: Coefficient>(sigma: &Endomorphism<C>, i: usize, d: usize) -> GrassmannElement<C> {
    partial(i, sigma.image(i)).degree_part(d)
}

/// Decides σ ∈ g. Maps that are not automorphisms lie in no subgroup.
pub fn member<C: Coefficient>(sigma: &Endomorphism<C>, g: GroupId) -> Result<bool> {
    Ok(member_with_witness(sigma, g)?.member)
}

pub fn member_with_witness<C: Coefficient>(sigma: &Endomorphism<C>, g: GroupId) -> Result<Membership<C>> {
    let n = sigma.n();
    g.validate(n)?;
    let plain = |member: bool| Ok(Membership { member, witness: None });
    if !sigma.is_automorphism() {
        return plain(false);
    }
    match g {
        GroupId::Omega => {
            let witness = inner_witness(sigma);
            Ok(Membership { member: witness.is_some(), witness })
        }
        GroupId::OmegaS(s) => {
            let witness = inner_witness(sigma).filter(|a| a.iter().all(|(m, _)| m.count_ones() as usize % s == 0));
            Ok(Membership { member: witness.is_some(), witness })
        }
        GroupId::Gamma => plain(in_gamma(sigma)),
        GroupId::GammaPow(i) => plain(in_gamma(sigma) && in_u_pow(sigma, i)),
        GroupId::GammaAsc(k) => plain(in_gamma(sigma) && sigma.jacobian()?.valuation >= k),
        GroupId::GammaGraded(s) => plain(
            in_gamma(sigma) && diffs(sigma).iter().all(|d| d.iter().all(|(m, _)| m.count_ones() as usize % s == 1)),
        ),
        GroupId::U => plain(in_u_pow(sigma, 2)),
        GroupId::UPow(i) => plain(in_u_pow(sigma, i)),
        GroupId::Phi => plain(in_gamma(sigma) && images_in_own_ideal(sigma)),
        GroupId::PhiI(i) => plain(in_gamma(sigma) && sigma.image(i).in_ideal_of(i)),
        GroupId::PhiPrime => plain(images_in_own_ideal(sigma)),
        GroupId::PhiPow(k) => plain(in_gamma(sigma) && images_in_own_ideal(sigma) && in_u_pow(sigma, k)),
        GroupId::PhiPrimeLayer(k) => {
            let s = (k - 1) / 2;
            if !(in_gamma(sigma) && images_in_own_ideal(sigma) && in_u_pow(sigma, k)) {
                return plain(false);
            }
            let first = n - 2 * s;
            let ok = (1..=n).all(|i| {
                let b = scaling_part(sigma, i, 2 * s);
                if i < first {
                    b.is_zero()
                } else {
                    b.iter().all(|(m, _)| layer_of(n, m) == i)
                }
            });
            plain(ok)
        }
        GroupId::Sigma => plain(in_sigma(sigma)?),
        GroupId::SigmaPrime => plain(in_sigma(sigma)? && images_in_own_ideal(sigma)),
        GroupId::SigmaPrimePow(j) => plain(in_sigma(sigma)? && images_in_own_ideal(sigma) && in_u_pow(sigma, j)),
        GroupId::SigmaDoublePrime => {
            if !in_sigma(sigma)? {
                return plain(false);
            }
            match decompose_gamma(sigma)? {
                FactoredAutomorphism::GammaWord { phi, .. } => plain(in_u_pow(&phi, 5)),
                _ => Err(Error::Internal("decompose_gamma returned another variant".into())),
            }
        }
        GroupId::GEv => plain(sigma.images().iter().all(|img| img.filter(|m| m.count_ones() != 1).is_even())),
        GroupId::GOd => plain(sigma.images().iter().all(|img| img.is_odd())),
        GroupId::GZs(s) => {
            plain(sigma.images().iter().all(|img| img.iter().all(|(m, _)| m.count_ones() as usize % s == 1 % s)))
        }
    }
}

#[cfg(test)]
mod tests;
