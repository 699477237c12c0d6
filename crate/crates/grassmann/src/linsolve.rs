//! Linear solvers over Λₙ: the ordered coordinate split, the two systems
//! xᵢa = uᵢ and ∂ᵢa = uᵢ, the canonical split of a homogeneous even element
//! into layers, and the kernel/section split of the symbol-sum map.

use std::collections::BTreeMap;

use crate::algebra::monomial::{bit, full_mask, subsets_of_degree, Mask};
use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::skewcalc::{left_mul_generator, partial, phi_i, prefix_monomial, MultiIndex};

/// a = x₁⋯xₙaₙ + x₁⋯x_{n−1}bₙ + Σ_{i=1}^{n−2} x₁⋯xᵢb_{i+1} + b₁ with
/// bᵢ ∈ K⌊x_{i+1},…,xₙ⌋.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateSplit<C> {
    pub a_n: C,
    pub b_n: C,
    /// b₁,…,b_{n−1}.
    pub b: Vec<GrassmannElement<C>>,
}

impl<C: Coefficient> CoordinateSplit<C> {
    pub fn reassemble(&self, n: usize) -> GrassmannElement<C> {
        let mut out = GrassmannElement::monomial(n, full_mask(n), self.a_n.clone());
        out += &GrassmannElement::monomial(n, full_mask(n - 1), self.b_n.clone());
        for (k, b) in self.b.iter().enumerate() {
            out += &(&prefix_monomial(n, k) * b);
        }
        out
    }
}

pub fn coordinate_split<C: Coefficient>(a: &GrassmannElement<C>) -> CoordinateSplit<C> {
    let n = a.n();
    let a_n = MultiIndex(full_mask(n)).apply_partials(a).constant_term();
    let b_n = MultiIndex(full_mask(n - 1)).apply_partials(&phi_i(n, a).expect("n in range")).constant_term();
    let mut b = Vec::with_capacity(n.saturating_sub(1));
    if n >= 2 {
        b.push(phi_i(1, a).expect("1 in range"));
    }
    for i in 1..n.saturating_sub(1) {
        b.push(MultiIndex(full_mask(i)).apply_partials(&phi_i(i + 1, a).expect("index in range")));
    }
    CoordinateSplit { a_n, b_n, b }
}

/// All solutions `particular + λ·direction`, λ ∈ K.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionFamily<C> {
    pub particular: GrassmannElement<C>,
    pub direction: GrassmannElement<C>,
}

impl<C: Coefficient> SolutionFamily<C> {
    pub fn instantiate(&self, lambda: &C) -> GrassmannElement<C> {
        &self.particular + &self.direction.scale(lambda)
    }
}

fn check_system<C: Coefficient>(u: &[GrassmannElement<C>]) -> Result<usize> {
    let n = u.first().map(|e| e.n()).ok_or_else(|| Error::InvalidParameter("empty system".into()))?;
    if u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.len() });
    }
    if let Some(e) = u.iter().find(|e| e.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: e.n() });
    }
    Ok(n)
}

/// Solves xᵢa = uᵢ for i = 1..n. The free direction is x₁⋯xₙ.
pub fn solve_xi_system<C: Coefficient>(u: &[GrassmannElement<C>]) -> Result<SolutionFamily<C>> {
    let n = check_system(u)?;
    for (k, ui) in u.iter().enumerate() {
        if !ui.in_ideal_of(k + 1) {
            return Err(Error::Solvability(format!("(i) at i = {}: u_{} is not in (x_{})", k + 1, k + 1, k + 1)));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = left_mul_generator(i, &u[j - 1]);
            let rhs = -left_mul_generator(j, &u[i - 1]);
            if lhs != rhs {
                return Err(Error::Solvability(format!("(ii) at (i, j) = ({i}, {j}): x_i u_j != -x_j u_i")));
            }
        }
    }
    let mut a = partial(1, &u[0]);
    for i in 1..n {
        let inner = partial(i + 1, &u[i]);
        a += &(&prefix_monomial(n, i) * &MultiIndex(full_mask(i)).apply_partials(&inner));
    }
    Ok(SolutionFamily { particular: a, direction: GrassmannElement::top(n) })
}

/// Solves ∂ᵢa = uᵢ for i = 1..n. The free direction is the constant 1.
pub fn solve_partial_system<C: Coefficient>(u: &[GrassmannElement<C>]) -> Result<SolutionFamily<C>> {
    let n = check_system(u)?;
    for (k, ui) in u.iter().enumerate() {
        if !ui.is_free_of(k + 1) {
            return Err(Error::Solvability(format!("(i) at i = {}: u_{} involves x_{}", k + 1, k + 1, k + 1)));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if partial(i, &u[j - 1]) != -partial(j, &u[i - 1]) {
                return Err(Error::Solvability(format!("(ii) at (i, j) = ({i}, {j}): d_i u_j != -d_j u_i")));
            }
        }
    }
    let mut a = GrassmannElement::zero(n);
    for alpha in 1..=full_mask(n) {
        let first = alpha.trailing_zeros() as usize + 1;
        let u_alpha = MultiIndex(alpha & !bit(first)).apply_partials(&u[first - 1]);
        a += &GrassmannElement::monomial(n, alpha, u_alpha.constant_term());
    }
    Ok(SolutionFamily { particular: a, direction: GrassmannElement::one(n) })
}

fn check_layer_degree(n: usize, s: usize) -> Result<()> {
    if s == 0 || 2 * s + 1 > n {
        Err(Error::InvalidParameter(format!("s = {s} is outside 1..={} for n = {n}", (n.max(1) - 1) / 2)))
    } else {
        Ok(())
    }
}

/// The layer of a degree-2s monomial: the largest index it misses. Monomials
/// of layer i have the form x^β x_{i+1}⋯xₙ with β ⊆ {1..i−1}.
pub fn layer_of(n: usize, alpha: Mask) -> usize {
    let missing = full_mask(n) & !alpha;
    32 - missing.leading_zeros() as usize
}

/// a = a_{n−2s} + ⋯ + aₙ, each part spanned by the monomials of its layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LayerSplit2s<C> {
    pub n: usize,
    pub s: usize,
    /// Parts for i = n−2s, …, n.
    pub parts: Vec<GrassmannElement<C>>,
}

impl<C: Coefficient> LayerSplit2s<C> {
    pub fn first_index(&self) -> usize {
        self.n - 2 * self.s
    }

    /// The part aᵢ, zero for i below n−2s.
    pub fn part(&self, i: usize) -> GrassmannElement<C> {
        if i < self.first_index() {
            GrassmannElement::zero(self.n)
        } else {
            self.parts[i - self.first_index()].clone()
        }
    }

    pub fn reassemble(&self) -> GrassmannElement<C> {
        self.parts.iter().fold(GrassmannElement::zero(self.n), |acc, p| &acc + p)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }
}

pub fn layer_split<C: Coefficient>(a: &GrassmannElement<C>, s: usize) -> Result<LayerSplit2s<C>> {
    let n = a.n();
    check_layer_degree(n, s)?;
    if !a.is_homogeneous(2 * s) {
        return Err(Error::InvalidParameter(format!("element is not homogeneous of degree {}", 2 * s)));
    }
    let first = n - 2 * s;
    let parts = (first..=n).map(|i| a.filter(|m| layer_of(n, m) == i)).collect();
    Ok(LayerSplit2s { n, s, parts })
}

/// Avoidance functions j_{i,s}(α) = min({i+1..n} \ α) on their domains S′_{i,s}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AvoidanceFunctions {
    pub n: usize,
    pub s: usize,
}

impl AvoidanceFunctions {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        check_layer_degree(n, s)?;
        Ok(AvoidanceFunctions { n, s })
    }

    /// Supp(Aᵢ): degree-2s monomials of layer i.
    pub fn layer_support(&self, i: usize) -> Vec<Mask> {
        let (n, s) = (self.n, self.s);
        if i < n - 2 * s {
            return Vec::new();
        }
        subsets_of_degree(full_mask(n) & !bit(i), 2 * s).into_iter().filter(|&m| layer_of(n, m) == i).collect()
    }

    /// S′_{i,s}, in increasing mask order.
    pub fn domain(&self, i: usize) -> Vec<Mask> {
        let (n, s) = (self.n, self.s);
        if i >= n {
            return Vec::new();
        }
        let all = subsets_of_degree(full_mask(n) & !bit(i), 2 * s);
        if i < n - 2 * s {
            all
        } else {
            let support = self.layer_support(i);
            all.into_iter().filter(|m| !support.contains(m)).collect()
        }
    }

    pub fn j(&self, i: usize, alpha: Mask) -> usize {
        (i + 1..=self.n).find(|&k| alpha & bit(k) == 0).expect("alpha lies in the domain of j_i")
    }

    /// Σᵢ |S′_{i,s}|.
    pub fn kernel_rank(&self) -> usize {
        (1..self.n).map(|i| self.domain(i).len()).sum()
    }
}

/// Kernel coordinates λ_{i,α} and the section residual of a vector v ∈ V_{n,2s}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelSplit<C> {
    pub coordinates: BTreeMap<(usize, Mask), C>,
    pub residual: LayerSplit2s<C>,
}

impl<C: Coefficient> KernelSplit<C> {
    /// Σ λ x^α(eᵢ − e_{jᵢ(α)}) + residual.
    pub fn recombine(&self, j: &AvoidanceFunctions) -> Vec<GrassmannElement<C>> {
        let n = self.residual.n;
        let mut v: Vec<_> = (1..=n).map(|i| self.residual.part(i)).collect();
        for (&(i, alpha), lambda) in &self.coordinates {
            let t = GrassmannElement::monomial(n, alpha, lambda.clone());
            v[i - 1] += &t;
            v[j.j(i, alpha) - 1] -= &t;
        }
        v
    }
}

pub fn kernel_split<C: Coefficient>(v: &[GrassmannElement<C>], s: usize, j: &AvoidanceFunctions) -> Result<KernelSplit<C>> {
    let n = check_system(v)?;
    if j.n != n || j.s != s {
        return Err(Error::InvalidParameter("avoidance functions built for another (n, s)".into()));
    }
    for (k, vi) in v.iter().enumerate() {
        if !vi.is_homogeneous(2 * s) || !vi.is_free_of(k + 1) {
            return Err(Error::InvalidParameter(format!("v_{} is not in the x_{}-free part of degree {}", k + 1, k + 1, 2 * s)));
        }
    }
    let mut cur = v.to_vec();
    let mut coordinates = BTreeMap::new();
    for i in 1..n {
        for alpha in j.domain(i) {
            let lambda = cur[i - 1].coeff(alpha);
            if lambda.is_zero() {
                continue;
            }
            let t = GrassmannElement::monomial(n, alpha, lambda.clone());
            cur[i - 1] -= &t;
            cur[j.j(i, alpha) - 1] += &t;
            coordinates.insert((i, alpha), lambda);
        }
    }
    let first = n - 2 * s;
    for (k, vi) in cur.iter().enumerate() {
        let i = k + 1;
        if vi.iter().any(|(m, _)| i < first || layer_of(n, m) != i) {
            return Err(Error::Internal(format!("residual v_{i} lies outside the section module")));
        }
    }
    Ok(KernelSplit { coordinates, residual: LayerSplit2s { n, s, parts: cur[first - 1..].to_vec() } })
}
