//! Generating one-parameter subgroups, and the rank of the Lie algebra they span.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupId;
use crate::algebra::monomial::{bit, full_mask, indices, mask_of, subsets_of_degree};
use crate::algebra::{GrassmannElement, Mask};
use crate::coeff::{Coefficient, Fp};
use crate::endo::{omega, rho, shift, Endomorphism};
use crate::error::{Error, Result};
use crate::linsolve::AvoidanceFunctions;
use crate::skewcalc::partial;

/// A one-parameter subgroup λ ↦ g(λ) ≅ (K, +).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GeneratorDescriptor {
    /// σ_{i,λx_jx_kx_l} with j < k < l.
    Sigma { i: usize, jkl: [usize; 3] },
    /// ξ_{i,λx^α} with i ∉ α and α odd.
    Xi { i: usize, monomial: Mask },
    /// ρ_{i,j;λx^α}.
    Rho { i: usize, j: usize, alpha: Mask },
    /// ω_{1+λx^α} with α odd.
    Omega { monomial: Mask },
}

fn word(mask: Mask) -> String {
    indices(mask).map(|k| format!("x{k}")).collect()
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorDescriptor::Sigma { i, jkl } => write!(f, "sigma[{i}; {}]", word(mask_of(&jkl))),
            GeneratorDescriptor::Xi { i, monomial } => write!(f, "xi[{i}; {}]", word(monomial)),
            GeneratorDescriptor::Rho { i, j, alpha } => write!(f, "rho[{i},{j}; {}]", word(alpha)),
            GeneratorDescriptor::Omega { monomial } => write!(f, "omega[{}]", word(monomial)),
        }
    }
}

impl GeneratorDescriptor {
    /// Checks the index constraints of the family.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("{self}: {m}")));
        let in_range = |k: usize| (1..=n).contains(&k);
        match *self {
            GeneratorDescriptor::Sigma { i, jkl: [j, k, l] } => {
                if !(in_range(i) && in_range(j) && in_range(k) && in_range(l)) {
                    return bad("index out of range");
                }
                if !(j < k && k < l) {
                    return bad("need j < k < l");
                }
            }
            GeneratorDescriptor::Xi { i, monomial } => {
                if !in_range(i) || monomial & !full_mask(n) != 0 {
                    return bad("index out of range");
                }
                if monomial & bit(i) != 0 || monomial.count_ones() % 2 == 0 || monomial.count_ones() < 3 {
                    return bad("need an odd monomial of degree ≥ 3 free of x_i");
                }
            }
            GeneratorDescriptor::Rho { i, j, alpha } => {
                if !in_range(i) || !in_range(j) || i == j || alpha & !full_mask(n) != 0 {
                    return bad("index out of range");
                }
                if alpha & (bit(i) | bit(j)) != 0 || alpha.count_ones() % 2 == 1 || alpha == 0 {
                    return bad("need a nonempty even monomial free of x_i and x_j");
                }
            }
            GeneratorDescriptor::Omega { monomial } => {
                if monomial & !full_mask(n) != 0 || monomial.count_ones() % 2 == 0 {
                    return bad("need an odd monomial");
                }
            }
        }
        Ok(())
    }

    /// The subgroup element at parameter λ.
    pub fn instantiate<C: Coefficient>(&self, n: usize, lambda: C) -> Result<Endomorphism<C>> {
        self.validate(n)?;
        Ok(match *self {
            GeneratorDescriptor::Sigma { i, jkl } => shift(i, &GrassmannElement::monomial(n, mask_of(&jkl), lambda)),
            GeneratorDescriptor::Xi { i, monomial } => shift(i, &GrassmannElement::monomial(n, monomial, lambda)),
            GeneratorDescriptor::Rho { i, j, alpha } => rho(n, i, j, lambda, alpha),
            GeneratorDescriptor::Omega { monomial } => omega(&GrassmannElement::monomial(n, monomial, lambda)),
        })
    }

    /// The images D(x₁), …, D(xₙ) of the derivation d/dλ g(λ) at λ = 0, when D is even.
    pub fn tangent<C: Coefficient>(&self, n: usize) -> Option<Vec<GrassmannElement<C>>> {
        let mut d = vec![GrassmannElement::zero(n); n];
        match *self {
            GeneratorDescriptor::Sigma { i, jkl } => d[i - 1] = GrassmannElement::monomial(n, mask_of(&jkl), C::one()),
            GeneratorDescriptor::Xi { i, monomial } => d[i - 1] = GrassmannElement::monomial(n, monomial, C::one()),
            GeneratorDescriptor::Rho { i, j, alpha } => {
                let t = GrassmannElement::monomial(n, alpha, C::one());
                d[i - 1] = &GrassmannElement::generator(n, i) * &t;
                d[j - 1] = -(&GrassmannElement::generator(n, j) * &t);
            }
            GeneratorDescriptor::Omega { .. } => return None,
        }
        Some(d)
    }
}

fn sigma_family(n: usize, keep: impl Fn(usize, Mask) -> bool) -> Vec<GeneratorDescriptor> {
    let mut out = Vec::new();
    for i in 1..=n {
        for m in subsets_of_degree(full_mask(n), 3) {
            if keep(i, m) {
                let v: Vec<usize> = indices(m).collect();
                out.push(GeneratorDescriptor::Sigma { i, jkl: [v[0], v[1], v[2]] });
            }
        }
    }
    out
}

/// The generating families: Γ and U for n ≥ 3, Φ for n ≥ 3, Σ″ for n ≥ 4, Σ for n ≥ 7.
pub fn enumerate_generators(g: GroupId, n: usize) -> Result<Vec<GeneratorDescriptor>> {
    let need = |min: usize| {
        if n < min {
            Err(Error::Unsupported(format!("generators of {g} are listed for n ≥ {min}")))
        } else {
            Ok(())
        }
    };
    let avoiding = |i: usize, m: Mask| m & bit(i) == 0;
    match g {
        GroupId::Gamma => {
            need(3)?;
            Ok(sigma_family(n, |_, _| true))
        }
        GroupId::U => {
            need(3)?;
            let mut out = sigma_family(n, |_, _| true);
            out.extend((1..=n).map(|i| GeneratorDescriptor::Omega { monomial: bit(i) }));
            Ok(out)
        }
        GroupId::Phi => {
            need(3)?;
            Ok(sigma_family(n, |i, m| m & bit(i) != 0))
        }
        GroupId::SigmaDoublePrime => {
            need(4)?;
            let mut out = sigma_family(n, avoiding);
            if n == 6 {
                out.extend((1..=n).map(|i| GeneratorDescriptor::Xi { i, monomial: full_mask(n) & !bit(i) }));
            }
            Ok(out)
        }
        GroupId::Sigma => {
            need(7)?;
            let j = AvoidanceFunctions::new(n, 1)?;
            let mut out: Vec<_> = (1..n)
                .flat_map(|i| j.domain(i).into_iter().map(move |alpha| (i, alpha)))
                .map(|(i, alpha)| GeneratorDescriptor::Rho { i, j: j.j(i, alpha), alpha })
                .collect();
            out.extend(sigma_family(n, avoiding));
            Ok(out)
        }
        _ => Err(Error::Unsupported(format!("no generating family is listed for {g}"))),
    }
}

type Big = Fp<2147483647>;

/// The even derivation D with D(xᵢ) = dᵢ, applied to e: Σₖ dₖ ∂ₖ(e).
fn derive(d: &[GrassmannElement<Big>], e: &GrassmannElement<Big>) -> GrassmannElement<Big> {
    let mut out = GrassmannElement::zero(e.n());
    for (k, dk) in d.iter().enumerate() {
        if dk.is_zero() {
            continue;
        }
        let p = partial(k + 1, e);
        if !p.is_zero() {
            out += &(dk * &p);
        }
    }
    out
}

fn bracket(a: &[GrassmannElement<Big>], b: &[GrassmannElement<Big>]) -> Vec<GrassmannElement<Big>> {
    a.iter().zip(b).map(|(ai, bi)| &derive(a, bi) - &derive(b, ai)).collect()
}

fn coordinates(d: &[GrassmannElement<Big>]) -> BTreeMap<(usize, Mask), Big> {
    d.iter().enumerate().flat_map(|(k, e)| e.iter().map(move |(m, c)| ((k, m), *c))).collect()
}

/// Incremental row echelon form over the large prime field.
#[derive(Default)]
struct Echelon {
    rows: HashMap<(usize, Mask), BTreeMap<(usize, Mask), Big>>,
}

impl Echelon {
    fn insert(&mut self, mut v: BTreeMap<(usize, Mask), Big>) -> bool {
        while let Some((&key, &lead)) = v.iter().next() {
            match self.rows.get(&key) {
                Some(row) => {
                    for (k, c) in row {
                        let e = v.entry(*k).or_insert_with(Big::zero);
                        *e = *e - lead * *c;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = lead.inv().expect("nonzero pivot");
                    for c in v.values_mut() {
                        *c = *c * inv;
                    }
                    self.rows.insert(key, v);
                    return true;
                }
            }
        }
        false
    }
}

/// Dimension of the Lie algebra generated by the tangent derivations of the
/// descriptors, computed modulo a large prime and stopping once `cap` is
/// reached. This bounds the dimension of the generated group from below.
pub fn generated_lie_rank(gens: &[GeneratorDescriptor], n: usize, cap: Option<usize>) -> Result<usize> {
    let mut basis: Vec<Vec<GrassmannElement<Big>>> = Vec::new();
    let mut ech = Echelon::default();
    for g in gens {
        g.validate(n)?;
        let t = g
            .tangent::<Big>(n)
            .ok_or_else(|| Error::Unsupported(format!("{g} has an odd tangent derivation")))?;
        if ech.insert(coordinates(&t)) {
            basis.push(t);
        }
    }
    let mut done = 0;
    while done < basis.len() {
        if cap.is_some_and(|c| basis.len() >= c) {
            break;
        }
        for k in 0..done {
            let b = bracket(&basis[done], &basis[k]);
            if ech.insert(coordinates(&b)) {
                basis.push(b);
            }
        }
        done += 1;
    }
    Ok(basis.len())
}
