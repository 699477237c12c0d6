//! Dimensions of the affine subgroups and quotients: closed forms and an
//! independent count of the factorization coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::monomial::{binomial, full_mask, subsets_of_degree, MAX_N};
use crate::error::{Error, Result};
use crate::linsolve::AvoidanceFunctions;

/// A subgroup or quotient whose dimension is known.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum DimTarget {
    Gamma,
    Phi,
    Sigma,
    SigmaPrime,
    SigmaDoublePrime,
    SigmaPrimeCapDoublePrime,
    /// The shifts xᵢ ↦ xᵢ + bᵢ with bᵢ odd, free of xᵢ and of degree ≥ 3.
    FDoublePrime,
    /// Γ_{2s}, carrying 2s.
    GammaAsc(usize),
    GammaModSigma,
    SigmaModDoublePrime,
}

impl DimTarget {
    pub fn all_for(n: usize) -> Vec<DimTarget> {
        let mut out = vec![
            DimTarget::Gamma,
            DimTarget::Phi,
            DimTarget::Sigma,
            DimTarget::SigmaPrime,
            DimTarget::SigmaDoublePrime,
            DimTarget::SigmaPrimeCapDoublePrime,
            DimTarget::FDoublePrime,
            DimTarget::GammaModSigma,
            DimTarget::SigmaModDoublePrime,
        ];
        out.extend((1..=n / 2 + 1).map(|s| DimTarget::GammaAsc(2 * s)));
        out
    }
}

impl fmt::Display for DimTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimTarget::Gamma => write!(f, "gamma"),
            DimTarget::Phi => write!(f, "phi"),
            DimTarget::Sigma => write!(f, "sigma"),
            DimTarget::SigmaPrime => write!(f, "sigma-prime"),
            DimTarget::SigmaDoublePrime => write!(f, "sigma-double-prime"),
            DimTarget::SigmaPrimeCapDoublePrime => write!(f, "sigma-prime-cap-double-prime"),
            DimTarget::FDoublePrime => write!(f, "f-double-prime"),
            DimTarget::GammaAsc(k) => write!(f, "gamma-asc:{k}"),
            DimTarget::GammaModSigma => write!(f, "gamma/sigma"),
            DimTarget::SigmaModDoublePrime => write!(f, "sigma/sigma-double-prime"),
        }
    }
}

impl FromStr for DimTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace('_', "-");
        if let Some(k) = lower.strip_prefix("gamma-asc:") {
            let k: usize = k.parse().map_err(|_| Error::InvalidParameter(format!("'{k}' is not an index")))?;
            if k == 0 || k % 2 == 1 {
                return Err(Error::InvalidParameter("Γ_{2s} needs a positive even index".into()));
            }
            return Ok(DimTarget::GammaAsc(k));
        }
        match lower.as_str() {
            "gamma" => Ok(DimTarget::Gamma),
            "phi" => Ok(DimTarget::Phi),
            "sigma" => Ok(DimTarget::Sigma),
            "sigma-prime" => Ok(DimTarget::SigmaPrime),
            "sigma-double-prime" => Ok(DimTarget::SigmaDoublePrime),
            "sigma-prime-cap-double-prime" => Ok(DimTarget::SigmaPrimeCapDoublePrime),
            "f-double-prime" => Ok(DimTarget::FDoublePrime),
            "gamma/sigma" => Ok(DimTarget::GammaModSigma),
            "sigma/sigma-double-prime" => Ok(DimTarget::SigmaModDoublePrime),
            _ => Err(Error::InvalidParameter(format!("no dimension is known for '{lower}'"))),
        }
    }
}

/// 2 for even n, 1 for odd n.
pub fn pi_n(n: usize) -> u64 {
    if n % 2 == 0 {
        2
    } else {
        1
    }
}

fn check(g: DimTarget, n: usize) -> Result<()> {
    let min = match g {
        DimTarget::Gamma | DimTarget::Phi | DimTarget::FDoublePrime => 2,
        _ => 4,
    };
    if n < min || n > MAX_N {
        return Err(Error::Unsupported(format!("dimension of {g} needs {min} ≤ n ≤ {MAX_N}")));
    }
    Ok(())
}

fn pow2(k: usize) -> i64 {
    1i64 << k
}

/// The closed-form dimension.
pub fn dim_formula(g: DimTarget, n: usize) -> Result<u64> {
    check(g, n)?;
    let ni = n as i64;
    let pi = pi_n(n) as i64;
    let c2 = binomial(n, 2) as i64;
    let sigma = (ni - 1) * pow2(n - 1) - ni * ni + pi;
    let sigma_prime = (ni - 2) * pow2(n - 2) - ni + pi;
    let v = match g {
        DimTarget::Gamma => ni * (pow2(n - 1) - ni),
        DimTarget::Phi => ni * (pow2(n - 2) - 1),
        DimTarget::Sigma => sigma,
        DimTarget::SigmaPrime => sigma_prime,
        DimTarget::FDoublePrime => ni * (pow2(n - 2) - ni + 1),
        DimTarget::SigmaDoublePrime => sigma - (ni - 3) * c2,
        DimTarget::SigmaPrimeCapDoublePrime => sigma_prime - (ni - 3) * c2,
        DimTarget::GammaAsc(k) => sigma + (k / 2..=(n - 1) / 2).map(|i| binomial(n, 2 * i) as i64).sum::<i64>(),
        DimTarget::GammaModSigma => pow2(n - 1) - pi,
        DimTarget::SigmaModDoublePrime => (ni - 3) * c2,
    };
    u64::try_from(v).map_err(|_| Error::Internal(format!("negative dimension for {g} at n = {n}")))
}

/// Masks over `vars` variables with degree satisfying `keep`.
fn count_masks(vars: usize, keep: impl Fn(usize) -> bool) -> u64 {
    (0..=full_mask(vars)).filter(|m| keep(m.count_ones() as usize)).count() as u64
}

fn kernel_count(n: usize, s: usize) -> u64 {
    AvoidanceFunctions::new(n, s).map(|j| (1..=n).map(|i| j.domain(i).len() as u64).sum()).unwrap_or(0)
}

/// The dimension counted as the number of free coordinates of the factorizations.
pub fn dim_by_coordinates(g: DimTarget, n: usize) -> Result<u64> {
    check(g, n)?;
    let top_s = (n - 1) / 2;
    let phi = n as u64 * count_masks(n - 1, |d| d >= 2 && d % 2 == 0);
    let f2 = n as u64 * count_masks(n - 1, |d| d >= 3 && d % 2 == 1);
    let sigma_prime: u64 = (1..=top_s).map(|s| kernel_count(n, s)).sum();
    let sigma = sigma_prime + f2;
    let quotient_sdp = kernel_count(n, 1);
    let even_layer = |t: usize| subsets_of_degree(full_mask(n), 2 * t).len() as u64;
    Ok(match g {
        DimTarget::Gamma => phi + f2,
        DimTarget::Phi => phi,
        DimTarget::FDoublePrime => f2,
        DimTarget::SigmaPrime => sigma_prime,
        DimTarget::Sigma => sigma,
        DimTarget::SigmaModDoublePrime => quotient_sdp,
        DimTarget::SigmaDoublePrime => sigma - quotient_sdp,
        DimTarget::SigmaPrimeCapDoublePrime => (2..=top_s).map(|s| kernel_count(n, s)).sum(),
        DimTarget::GammaAsc(k) => sigma + (k / 2..=top_s).map(even_layer).sum::<u64>(),
        DimTarget::GammaModSigma => (1..=top_s).map(even_layer).sum(),
    })
}
