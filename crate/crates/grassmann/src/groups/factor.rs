//! The five factorization algorithms and their common result type.

use std::collections::BTreeMap;

use super::{member, scaling_part, GroupId};
use crate::algebra::monomial::full_mask;
use crate::algebra::{GrassmannElement, Mask};
use crate::coeff::Coefficient;
use crate::endo::{gamma, linear, omega, rho, scaling, shift, Endomorphism, InverseStrategy, Matrix};
use crate::error::{Error, Result};
use crate::linsolve::{kernel_split, layer_split, solve_xi_system, AvoidanceFunctions};
use crate::skewcalc::partial;

/// One level of the unipotent factorization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UFactor<C> {
    /// ω_{1+a} with a homogeneous of degree `degree − 1`.
    Inner { degree: usize, a: GrassmannElement<C> },
    /// γ_b with every bᵢ homogeneous of degree `degree`.
    Shift { degree: usize, b: Vec<GrassmannElement<C>> },
}

impl<C: Coefficient> UFactor<C> {
    pub fn degree(&self) -> usize {
        match self {
            UFactor::Inner { degree, .. } | UFactor::Shift { degree, .. } => *degree,
        }
    }

    pub fn map(&self) -> Endomorphism<C> {
        match self {
            UFactor::Inner { a, .. } => omega(a),
            UFactor::Shift { b, .. } => gamma(b),
        }
    }
}

/// ξ_j = ξ_{1,b₁}ξ_{2,b₂}⋯ξ_{n,bₙ} with each bᵢ homogeneous of degree j and free of xᵢ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XiFactor<C> {
    pub degree: usize,
    pub shifts: Vec<GrassmannElement<C>>,
}

/// The ordered product ξ_{1,b₁}⋯ξ_{n,bₙ}.
pub fn xi_product<C: Coefficient>(shifts: &[GrassmannElement<C>]) -> Endomorphism<C> {
    let n = shifts.len();
    shifts
        .iter()
        .enumerate()
        .fold(Endomorphism::identity(n), |acc, (k, b)| if b.is_zero() { acc } else { acc.then_apply(&shift(k + 1, b)) })
}

/// φ′_a: xᵢ ↦ xᵢ(1 + aᵢ) where a = Σ aᵢ is the layer split of the degree-2s element a.
pub fn phi_prime<C: Coefficient>(a: &GrassmannElement<C>, s: usize) -> Result<Endomorphism<C>> {
    let split = layer_split(a, s)?;
    Ok(scaling(&(1..=a.n()).map(|i| split.part(i)).collect::<Vec<_>>()))
}

/// A factor of a factorization, with the subgroups it must belong to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor<C> {
    pub label: String,
    pub groups: Vec<GroupId>,
    pub map: Endomorphism<C>,
}

/// An automorphism written as an ordered product of structured factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactoredAutomorphism<C> {
    /// σ = ω_{1+a} γ_b σ_A.
    Oga { a: GrassmannElement<C>, b: Vec<GrassmannElement<C>>, matrix: Matrix<C> },
    /// σ = f_n ⋯ f_3 f_2; `levels` is stored as f_2, f_3, …
    UWord { n: usize, levels: Vec<UFactor<C>> },
    /// σ = φ ξ_{last} ⋯ ξ_5 ξ_3; `xis` is stored as ξ_3, ξ_5, …
    GammaWord { phi: Endomorphism<C>, xis: Vec<XiFactor<C>> },
    /// σ = σ₃σ₅⋯ with σ_{2s+1} the ordered product of ρ_{i,jᵢ(α);λx^α} over the
    /// coordinates keyed by (s, i, α).
    SigmaPrimeWord { n: usize, coordinates: BTreeMap<(usize, usize, Mask), C> },
    /// σ = φ′_{a(2)} φ′_{a(4)} ⋯ γ; `parts[s−1]` is a(2s).
    LayerWord { parts: Vec<GrassmannElement<C>>, gamma: Endomorphism<C> },
}

impl<C: Coefficient> FactoredAutomorphism<C> {
    pub fn kind(&self) -> &'static str {
        match self {
            FactoredAutomorphism::Oga { .. } => "oga",
            FactoredAutomorphism::UWord { .. } => "unipotent",
            FactoredAutomorphism::GammaWord { .. } => "gamma",
            FactoredAutomorphism::SigmaPrimeWord { .. } => "sigma-prime",
            FactoredAutomorphism::LayerWord { .. } => "layers",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FactoredAutomorphism::Oga { matrix, .. } => matrix.n(),
            FactoredAutomorphism::UWord { n, .. } | FactoredAutomorphism::SigmaPrimeWord { n, .. } => *n,
            FactoredAutomorphism::GammaWord { phi, .. } => phi.n(),
            FactoredAutomorphism::LayerWord { gamma, .. } => gamma.n(),
        }
    }

    /// The factors, leftmost first.
    pub fn factors(&self) -> Vec<Factor<C>> {
        match self {
            FactoredAutomorphism::Oga { a, b, matrix } => vec![
                Factor { label: "omega".into(), groups: vec![GroupId::Omega], map: omega(a) },
                Factor { label: "gamma".into(), groups: vec![GroupId::Gamma], map: gamma(b) },
                Factor { label: "linear".into(), groups: vec![GroupId::GEv, GroupId::GOd], map: linear(matrix) },
            ],
            FactoredAutomorphism::UWord { levels, .. } => levels
                .iter()
                .rev()
                .map(|f| match f {
                    UFactor::Inner { degree, .. } => Factor {
                        label: format!("omega[{degree}]"),
                        groups: vec![GroupId::Omega, GroupId::UPow(*degree)],
                        map: f.map(),
                    },
                    UFactor::Shift { degree, .. } => {
                        Factor { label: format!("gamma[{degree}]"), groups: vec![GroupId::GammaPow(*degree)], map: f.map() }
                    }
                })
                .collect(),
            FactoredAutomorphism::GammaWord { phi, xis } => {
                let mut out = vec![Factor { label: "phi".into(), groups: vec![GroupId::Phi], map: phi.clone() }];
                out.extend(xis.iter().rev().map(|x| Factor {
                    label: format!("xi[{}]", x.degree),
                    groups: vec![GroupId::SigmaDoublePrime, GroupId::GammaPow(x.degree)],
                    map: xi_product(&x.shifts),
                }));
                out
            }
            FactoredAutomorphism::SigmaPrimeWord { n, coordinates } => (1..=(n.max(&1) - 1) / 2)
                .map(|s| Factor {
                    label: format!("sigma-prime[{}]", 2 * s + 1),
                    groups: vec![GroupId::SigmaPrimePow(2 * s + 1)],
                    map: rho_product(*n, s, coordinates),
                })
                .collect(),
            FactoredAutomorphism::LayerWord { parts, gamma } => {
                let mut out: Vec<_> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, a)| Factor {
                        label: format!("phi-prime[{}]", 2 * k + 2),
                        groups: vec![GroupId::PhiPrimeLayer(2 * k + 3)],
                        map: phi_prime(a, k + 1).expect("parts are homogeneous of the layer degree"),
                    })
                    .collect();
                out.push(Factor { label: "sigma".into(), groups: vec![GroupId::Sigma], map: gamma.clone() });
                out
            }
        }
    }

    /// The product of the factors in order.
    pub fn recompose(&self) -> Endomorphism<C> {
        self.factors().iter().fold(Endomorphism::identity(self.n()), |acc, f| acc.then_apply(&f.map))
    }

    /// Whether the factorization reproduces σ and each factor lies in its declared subgroups.
    pub fn verify(&self, sigma: &Endomorphism<C>) -> Result<bool> {
        if self.recompose() != *sigma {
            return Ok(false);
        }
        for f in self.factors() {
            for g in &f.groups {
                if !member(&f.map, *g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn rho_product<C: Coefficient>(n: usize, s: usize, coordinates: &BTreeMap<(usize, usize, Mask), C>) -> Endomorphism<C> {
    let j = AvoidanceFunctions::new(n, s).expect("s is in range");
    coordinates
        .range((s, 0, 0)..(s + 1, 0, 0))
        .fold(Endomorphism::identity(n), |acc, (&(_, i, alpha), lambda)| {
            acc.then_apply(&rho(n, i, j.j(i, alpha), lambda.clone(), alpha))
        })
}

fn require<C: Coefficient>(sigma: &Endomorphism<C>, g: GroupId) -> Result<()> {
    if member(sigma, g)? {
        Ok(())
    } else {
        Err(Error::NotInGroup(g.to_string()))
    }
}

fn checked<C: Coefficient>(sigma: &Endomorphism<C>, f: FactoredAutomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    if f.recompose() == *sigma {
        Ok(f)
    } else {
        Err(Error::Internal(format!("{} factorization does not recompose", f.kind())))
    }
}

/// σ = ω_{1+a} γ_b σ_A with a odd of degree below n.
pub fn decompose_omega_gamma_linear<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    let n = sigma.n();
    let matrix = sigma.linear_part();
    let ainv = matrix.inverse().ok_or(Error::NotAnAutomorphism)?;
    if sigma.images().iter().any(|img| !img.constant_term().is_zero()) {
        return Err(Error::NotAnAutomorphism);
    }
    let odd: Vec<_> = sigma.images().iter().map(|e| e.odd_part()).collect();
    let even: Vec<_> = sigma.images().iter().map(|e| e.even_part()).collect();
    let b: Vec<_> = ainv
        .mul_column(&odd)
        .into_iter()
        .enumerate()
        .map(|(k, e)| &e - &GrassmannElement::generator(n, k + 1))
        .collect();
    let g = gamma(&b);
    let ginv = g.inverse(InverseStrategy::Iteration)?;
    let half = C::half();
    let u: Vec<_> = ainv.mul_column(&even).iter().map(|e| -ginv.act(e).scale(&half)).collect();
    let family = solve_xi_system(&u).map_err(|_| Error::Internal("inner component is inconsistent".into()))?;
    let a = g.act(&family.particular.odd_part()).filter(|m| m != full_mask(n));
    checked(sigma, FactoredAutomorphism::Oga { a, b, matrix })
}

/// σ ∈ U as an alternating product of inner factors and odd shifts, one per degree.
pub fn decompose_unipotent<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    require(sigma, GroupId::U)?;
    let n = sigma.n();
    let half = C::half();
    let mut cur = sigma.clone();
    let mut levels = Vec::new();
    for d in 2..=n {
        let mut v: Vec<_> =
            (1..=n).map(|i| (cur.image(i) - &GrassmannElement::generator(n, i)).degree_part(d)).collect();
        let f = if d % 2 == 1 {
            UFactor::Shift { degree: d, b: v }
        } else {
            let mut a = GrassmannElement::zero(n);
            for k in 1..=n {
                let bk = partial(k, &v[k - 1]);
                if bk.is_zero() {
                    continue;
                }
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= &(&GrassmannElement::generator(n, i + 1) * &bk);
                }
                a -= &bk.scale(&half);
            }
            if v.iter().any(|e| !e.is_zero()) {
                return Err(Error::Internal(format!("degree-{d} part is not inner")));
            }
            UFactor::Inner { degree: d, a }
        };
        cur = cur.then_apply(&f.map().inv()?);
        if !cur.images().iter().enumerate().all(|(k, e)| {
            (e - &GrassmannElement::generator(n, k + 1)).in_power_of_max_ideal(d + 1)
        }) {
            return Err(Error::Internal(format!("level {d} was not cleared")));
        }
        levels.push(f);
    }
    if !cur.is_identity() {
        return Err(Error::Internal("unipotent residual is not the identity".into()));
    }
    checked(sigma, FactoredAutomorphism::UWord { n, levels })
}

/// σ ∈ Γ as φ ξ_{last} ⋯ ξ_3 with φ ∈ Φ and each ξ_j a product of single-coordinate shifts.
pub fn decompose_gamma<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    require(sigma, GroupId::Gamma)?;
    let n = sigma.n();
    let mut cur = sigma.inv()?;
    let mut xis = Vec::new();
    for j in (3..=n).step_by(2) {
        let shifts: Vec<_> =
            (1..=n).map(|i| -&cur.image(i).degree_part(j).filter(|m| m & (1 << (i - 1)) == 0)).collect();
        cur = xi_product(&shifts).then_apply(&cur);
        xis.push(XiFactor { degree: j, shifts });
    }
    if !member(&cur, GroupId::Phi)? {
        return Err(Error::Internal("Γ residual is not in Φ".into()));
    }
    let phi = cur.inv()?;
    checked(sigma, FactoredAutomorphism::GammaWord { phi, xis })
}

/// σ ∈ Σ′ through its ρ-coordinates, degree by degree.
pub fn decompose_sigma_prime<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    let n = sigma.n();
    if n < 4 {
        return Err(Error::Unsupported("Σ′ factorization needs n ≥ 4".into()));
    }
    require(sigma, GroupId::SigmaPrime)?;
    let mut cur = sigma.clone();
    let mut coordinates = BTreeMap::new();
    for s in 1..=(n - 1) / 2 {
        let b: Vec<_> = (1..=n).map(|i| scaling_part(&cur, i, 2 * s)).collect();
        let j = AvoidanceFunctions::new(n, s)?;
        let split = kernel_split(&b, s, &j)?;
        if !split.residual.is_zero() {
            return Err(Error::Internal(format!("nonzero section residual at degree {}", 2 * s)));
        }
        coordinates.extend(split.coordinates.into_iter().map(|((i, alpha), l)| ((s, i, alpha), l)));
        cur = rho_product(n, s, &coordinates).inv()?.then_apply(&cur);
    }
    if !cur.is_identity() {
        return Err(Error::Internal("Σ′ residual is not the identity".into()));
    }
    checked(sigma, FactoredAutomorphism::SigmaPrimeWord { n, coordinates })
}

/// σ ∈ Γ as φ′_{a(2)} φ′_{a(4)} ⋯ γ with γ ∈ Σ.
pub fn decompose_layers<C: Coefficient>(sigma: &Endomorphism<C>) -> Result<FactoredAutomorphism<C>> {
    let n = sigma.n();
    if n < 4 {
        return Err(Error::Unsupported("layer factorization needs n ≥ 4".into()));
    }
    require(sigma, GroupId::Gamma)?;
    let mut cur = sigma.clone();
    let mut parts = Vec::new();
    for s in 1..=(n - 1) / 2 {
        let det = cur.jacobian()?.det;
        let a = det.degree_part(2 * s);
        let phi = phi_prime(&a, s)?;
        cur = phi.inv()?.then_apply(&cur);
        parts.push(a);
    }
    if !cur.jacobian()?.det.is_one() {
        return Err(Error::Internal("layer residual has a nontrivial Jacobian".into()));
    }
    checked(sigma, FactoredAutomorphism::LayerWord { parts, gamma: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp, Rational};
    use crate::endo::inner;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type E = GrassmannElement<Rational>;
    type Q = Endomorphism<Rational>;
    type F = Endomorphism<Fp<7>>;

    fn p(n: usize, s: &str) -> E {
        E::parse(n, s).unwrap()
    }

    #[test]
    fn oga_of_identity() {
        let f = decompose_omega_gamma_linear(&Q::identity(4)).unwrap();
        let FactoredAutomorphism::Oga { a, b, matrix } = f else { panic!() };
        assert!(a.is_zero());
        assert!(b.iter().all(|e| e.is_zero()));
        assert_eq!(matrix, Matrix::identity(4));
    }

    #[test]
    fn oga_of_an_inner_map() {
        let sigma = inner(&p(3, "1 + x1")).unwrap();
        let FactoredAutomorphism::Oga { a, b, matrix } = decompose_omega_gamma_linear(&sigma).unwrap() else {
            panic!()
        };
        assert_eq!(a, p(3, "x1"));
        assert!(b.iter().all(|e| e.is_zero()));
        assert_eq!(matrix, Matrix::identity(3));
    }

    #[test]
    fn oga_recovers_random_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = 5;
            let a0 = GrassmannElement::random(n, &mut rng, 0.3, |m| m.count_ones() % 2 == 1 && m != full_mask(n));
            let b0 = sample::gamma_shifts::<Fp<7>, _>(n, &mut rng, 0.3);
            let m0 = Matrix::random_invertible(n, &mut rng);
            let sigma = omega(&a0).then_apply(&gamma(&b0)).then_apply(&linear(&m0));
            let FactoredAutomorphism::Oga { a, b, matrix } = decompose_omega_gamma_linear(&sigma).unwrap() else {
                panic!()
            };
            assert_eq!((a, b, matrix), (a0, b0, m0));
        }
    }

    #[test]
    fn unipotent_single_shift_and_single_inner() {
        let b: Vec<E> = vec![p(4, "x2x3x4"), E::zero(4), p(4, "2x1x2x4"), E::zero(4)];
        let sigma = gamma(&b);
        let FactoredAutomorphism::UWord { levels, .. } = decompose_unipotent(&sigma).unwrap() else { panic!() };
        let nontrivial: Vec<_> = levels.iter().filter(|f| !f.map().is_identity()).collect();
        assert_eq!(nontrivial, vec![&UFactor::Shift { degree: 3, b }]);

        let w = omega(&p(4, "x1"));
        let FactoredAutomorphism::UWord { levels, .. } = decompose_unipotent(&w).unwrap() else { panic!() };
        let nontrivial: Vec<_> = levels.iter().filter(|f| !f.map().is_identity()).collect();
        assert_eq!(nontrivial, vec![&UFactor::Inner { degree: 2, a: p(4, "x1") }]);
    }

    #[test]
    fn unipotent_inner_parts_match_the_xi_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let sigma: F = sample::unipotent(6, &mut rng);
            let f = decompose_unipotent(&sigma).unwrap();
            assert!(f.verify(&sigma).unwrap());
            let FactoredAutomorphism::UWord { levels, .. } = f else { panic!() };
            for lv in levels {
                if let UFactor::Inner { degree, a } = lv {
                    let m = omega(&a);
                    let u: Vec<_> = (1..=6)
                        .map(|i| -(m.image(i) - &GrassmannElement::generator(6, i)).scale(&Fp::<7>::half()))
                        .collect();
                    let sol = solve_xi_system(&u).unwrap();
                    assert_eq!(sol.particular.odd_part().filter(|m| m != full_mask(6)), a, "level {degree}");
                }
            }
        }
    }

    #[test]
    fn gamma_word_of_phi_and_of_a_single_xi() {
        let phi = Q::parse(4, "x1 -> x1 + x1x2x3; x3 -> x3 - x1x3x4").unwrap();
        let FactoredAutomorphism::GammaWord { phi: got, xis } = decompose_gamma(&phi).unwrap() else { panic!() };
        assert_eq!(got, phi);
        assert!(xis.iter().all(|x| xi_product(&x.shifts).is_identity()));

        let xi = Q::parse(5, "x1 -> x1 + x2x3x4").unwrap();
        let f = decompose_gamma(&xi).unwrap();
        assert!(f.verify(&xi).unwrap());
        let FactoredAutomorphism::GammaWord { phi, xis } = f else { panic!() };
        assert!(phi.is_identity());
        assert_eq!(xi_product(&xis[0].shifts), xi);
        assert!(xi_product(&xis[1].shifts).is_identity());
    }

    #[test]
    fn sigma_prime_single_rho() {
        let sigma = rho(4, 1, 2, Rational::from_i64(3), 0b1100);
        let f = decompose_sigma_prime(&sigma).unwrap();
        let FactoredAutomorphism::SigmaPrimeWord { coordinates, .. } = &f else { panic!() };
        assert_eq!(coordinates.len(), 1);
        assert_eq!(coordinates.get(&(1, 1, 0b1100)), Some(&Rational::from_i64(3)));
        assert!(f.verify(&sigma).unwrap());
    }

    #[test]
    fn layers_of_a_single_scaling() {
        let sigma = Q::parse(4, "x4 -> x4 + x4x1x2").unwrap();
        assert_eq!(sigma.jacobian().unwrap().det, p(4, "1 + x1x2"));
        let f = decompose_layers(&sigma).unwrap();
        let FactoredAutomorphism::LayerWord { parts, gamma } = &f else { panic!() };
        assert_eq!(parts, &vec![p(4, "x1x2")]);
        assert!(gamma.is_identity());
        assert!(f.verify(&sigma).unwrap());
    }

    #[test]
    fn out_of_scope_inputs_are_rejected() {
        let w = omega(&p(4, "x1"));
        assert!(matches!(decompose_gamma(&w), Err(Error::NotInGroup(_))));
        assert!(matches!(decompose_layers(&w), Err(Error::NotInGroup(_))));
        let lin = linear(&Matrix::from_rows(vec![vec![Rational::from_i64(2), Rational::zero()], vec![Rational::zero(), Rational::one()]]));
        assert!(matches!(decompose_unipotent(&lin), Err(Error::NotInGroup(_))));
    }
}
