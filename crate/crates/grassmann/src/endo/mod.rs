//! Endomorphisms of Λₙ given by the images of the generators.

mod build;
mod inverse;
mod jacobian;
mod matrix;

use std::collections::HashMap;
use std::fmt;

pub use build::*;
pub use inverse::InverseStrategy;
pub use jacobian::{determinant, skew_partial_prime, valuation, DualDerivatives, JacobianData};
pub use matrix::Matrix;

use crate::algebra::monomial::bit;
use crate::algebra::{check_n, GrassmannElement, Mask};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// σ given by (σ(x₁), …, σ(xₙ)). Composition follows (στ)(xᵢ) = σ(τ(xᵢ)).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endomorphism<C> {
    n: usize,
    images: Vec<GrassmannElement<C>>,
}

impl<C: Coefficient> Endomorphism<C> {
    /// Checks that every image squares to zero and that images pairwise
    /// anticommute, so that the assignment extends to an algebra map.
    pub fn new(images: Vec<GrassmannElement<C>>) -> Result<Self> {
        let n = images.len();
        check_n(n)?;
        if let Some(e) = images.iter().find(|e| e.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: e.n() });
        }
        for i in 0..n {
            for j in i..n {
                let anti = &(&images[i] * &images[j]) + &(&images[j] * &images[i]);
                if !anti.is_zero() {
                    let what = if i == j {
                        format!("image of x{} does not square to zero", i + 1)
                    } else {
                        format!("images of x{} and x{} do not anticommute", i + 1, j + 1)
                    };
                    return Err(Error::NotWellDefined(what));
                }
            }
        }
        Ok(Endomorphism { n, images })
    }

    /// Skips the well-definedness check; for images produced by algebra maps.
    pub(crate) fn from_images_unchecked(images: Vec<GrassmannElement<C>>) -> Self {
        Endomorphism { n: images.len(), images }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_images_unchecked((1..=n).map(|i| GrassmannElement::generator(n, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[GrassmannElement<C>] {
        &self.images
    }

    /// σ(xᵢ), 1-based.
    pub fn image(&self, i: usize) -> &GrassmannElement<C> {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// The degree-1 coefficient matrix: entry (i, j) is the coefficient of xⱼ in σ(xᵢ).
    pub fn linear_part(&self) -> Matrix<C> {
        let n = self.n;
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.images[i].coeff(bit(j + 1)));
            }
        }
        m
    }

    fn check_same_n(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: n })
        }
    }

    /// σ(e), extending σ multiplicatively in ascending index order.
    pub fn apply(&self, e: &GrassmannElement<C>) -> Result<GrassmannElement<C>> {
        self.check_same_n(e.n())?;
        Ok(self.act(e))
    }

    /// [`apply`](Self::apply) for elements known to share the generator count.
    pub fn act(&self, e: &GrassmannElement<C>) -> GrassmannElement<C> {
        self.act_cached(e, &mut HashMap::new())
    }

    /// σ applied to each element, sharing the monomial images.
    pub(crate) fn act_all(&self, es: &[GrassmannElement<C>]) -> Vec<GrassmannElement<C>> {
        let mut cache = HashMap::new();
        es.iter().map(|e| self.act_cached(e, &mut cache)).collect()
    }

    fn act_cached(&self, e: &GrassmannElement<C>, cache: &mut HashMap<Mask, GrassmannElement<C>>) -> GrassmannElement<C> {
        let mut out = GrassmannElement::zero(self.n);
        for (mask, c) in e.iter() {
            let img = self.monomial_image(mask, cache);
            out += &img.scale(c);
        }
        out
    }

    fn monomial_image(&self, mask: Mask, cache: &mut HashMap<Mask, GrassmannElement<C>>) -> GrassmannElement<C> {
        if mask == 0 {
            return GrassmannElement::one(self.n);
        }
        if let Some(v) = cache.get(&mask) {
            return v.clone();
        }
        let top = 32 - mask.leading_zeros() as usize;
        let rest = self.monomial_image(mask & !bit(top), cache);
        let v = &rest * &self.images[top - 1];
        cache.insert(mask, v.clone());
        v
    }

    /// στ, the map xᵢ ↦ σ(τ(xᵢ)).
    pub fn compose(&self, tau: &Self) -> Result<Self> {
        self.check_same_n(tau.n)?;
        Ok(self.then_apply(tau))
    }

    /// [`compose`](Self::compose) for maps known to share the generator count.
    pub fn then_apply(&self, tau: &Self) -> Self {
        Self::from_images_unchecked(self.act_all(&tau.images))
    }

    /// Whether the linear part has a unit determinant.
    pub fn is_automorphism(&self) -> bool {
        self.linear_part().det().is_unit()
    }

    /// σ⁻¹ by the chosen strategy.
    pub fn inverse(&self, strategy: InverseStrategy) -> Result<Self> {
        inverse::inverse(self, strategy)
    }

    /// σ⁻¹ by resubstitution, the cheaper strategy.
    pub fn inv(&self) -> Result<Self> {
        self.inverse(InverseStrategy::Iteration)
    }

    /// The group commutator [σ, τ] = στσ⁻¹τ⁻¹.
    pub fn commutator(&self, tau: &Self) -> Result<Self> {
        self.check_same_n(tau.n)?;
        Ok(self.then_apply(tau).then_apply(&self.inv()?).then_apply(&tau.inv()?))
    }

    /// The k-th power.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.then_apply(self))
    }

    pub fn jacobian(&self) -> Result<JacobianData<C>> {
        jacobian::jacobian(self)
    }

    /// Parses `x<i> -> <element>` entries separated by newlines or `;`.
    /// Generators without an entry are fixed.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_n(n)?;
        let mut images: Vec<Option<GrassmannElement<C>>> = vec![None; n];
        let mut offset = 0;
        for chunk in text.split(['\n', ';']) {
            let here = offset;
            offset += chunk.len() + 1;
            if chunk.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = chunk
                .split_once("->")
                .ok_or_else(|| Error::Parse { position: here, message: "expected 'x<i> -> <element>'".into() })?;
            let lhs = lhs.trim();
            let i: usize = lhs
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|i| (1..=n).contains(i))
                .ok_or_else(|| Error::Parse { position: here, message: format!("'{lhs}' is not a generator of Λ_{n}") })?;
            if images[i - 1].is_some() {
                return Err(Error::Parse { position: here, message: format!("x{i} assigned twice") });
            }
            let value = GrassmannElement::parse(n, rhs).map_err(|e| match e {
                Error::Parse { position, message } => {
                    Error::Parse { position: here + lhs.len() + 2 + position, message }
                }
                other => other,
            })?;
            images[i - 1] = Some(value);
        }
        Self::new(
            images
                .into_iter()
                .enumerate()
                .map(|(k, img)| img.unwrap_or_else(|| GrassmannElement::generator(n, k + 1)))
                .collect(),
        )
    }
}

/// One `x<i> -> <element>` line per generator.
impl<C: Coefficient> fmt::Display for Endomorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "x{} -> {}", k + 1, img)?;
        }
        Ok(())
    }
}
