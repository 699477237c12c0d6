use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rand::Rng;

use super::monomial::{bit, full_mask, indices, product_sign_negative, Mask, MAX_N};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// Selects a graded piece of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Component {
    /// The homogeneous piece Λ_{n,d}.
    Degree(usize),
    Even,
    Odd,
}

/// An element of Λₙ(K): a sparse map from monomial masks to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrassmannElement<C> {
    n: usize,
    terms: BTreeMap<Mask, C>,
}

pub fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidGeneratorCount(n))
    }
}

pub fn check_index(n: usize, i: usize) -> Result<()> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, n })
    }
}

impl<C: Coefficient> GrassmannElement<C> {
    /// The zero element. Panics unless `1 <= n <= 16`.
    pub fn zero(n: usize) -> Self {
        check_n(n).expect("generator count");
        GrassmannElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(n, 0, c)
    }

    /// The generator `x_i`. Panics when `i` is out of range.
    pub fn generator(n: usize, i: usize) -> Self {
        check_index(n, i).expect("generator index");
        Self::monomial(n, bit(i), C::one())
    }

    /// The top monomial θ = x₁⋯xₙ.
    pub fn top(n: usize) -> Self {
        Self::monomial(n, full_mask(n), C::one())
    }

    pub fn monomial(n: usize, mask: Mask, c: C) -> Self {
        let mut e = Self::zero(n);
        assert!(mask & !full_mask(n) == 0, "monomial outside Λ_{n}");
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    /// Sums the given terms; duplicate masks are added together.
    pub fn from_terms<I: IntoIterator<Item = (Mask, C)>>(n: usize, terms: I) -> Self {
        let mut e = Self::zero(n);
        for (m, c) in terms {
            assert!(m & !full_mask(n) == 0, "monomial outside Λ_{n}");
            e.add_term(m, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Mask, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mask, &C)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: other.n })
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GrassmannElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect(),
        }
    }

    /// The product, or a dimension error when the generator counts differ.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.len() * other.len() > (1usize << self.n) {
            return self.mul_dense(other);
        }
        let mut raw: Vec<(Mask, C)> = Vec::with_capacity(self.len() * other.len());
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                raw.push((a | b, if product_sign_negative(a, b) { -c } else { c }));
            }
        }
        raw.sort_unstable_by_key(|(m, _)| *m);
        let mut terms = BTreeMap::new();
        let mut it = raw.into_iter().peekable();
        while let Some((m, mut c)) = it.next() {
            while let Some((_, d)) = it.next_if(|(m2, _)| *m2 == m) {
                c = c + d;
            }
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        GrassmannElement { n: self.n, terms }
    }

    /// Product accumulated in a table indexed by mask, for operands with many terms.
    fn mul_dense(&self, other: &Self) -> Self {
        let mut acc: Vec<Option<C>> = vec![None; 1usize << self.n];
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                let c = if product_sign_negative(a, b) { -c } else { c };
                let slot = &mut acc[(a | b) as usize];
                *slot = Some(match slot.take() {
                    Some(x) => x + c,
                    None => c,
                });
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(m, c)| c.filter(|c| !c.is_zero()).map(|c| (m as Mask, c)))
            .collect();
        GrassmannElement { n: self.n, terms }
    }

    /// Keeps the terms whose mask satisfies `keep`.
    pub fn filter<F: Fn(Mask) -> bool>(&self, keep: F) -> Self {
        GrassmannElement {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn component(&self, selector: Component) -> Self {
        match selector {
            Component::Degree(d) => self.filter(|m| m.count_ones() as usize == d),
            Component::Even => self.filter(|m| m.count_ones() % 2 == 0),
            Component::Odd => self.filter(|m| m.count_ones() % 2 == 1),
        }
    }

    pub fn even_part(&self) -> Self {
        self.component(Component::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.component(Component::Odd)
    }

    pub fn degree_part(&self, d: usize) -> Self {
        self.component(Component::Degree(d))
    }

    /// ē = e^ev − e^od.
    pub fn involution(&self) -> Self {
        GrassmannElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.count_ones() % 2 == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Sets every generator in `set` to zero.
    pub fn substitute_zero(&self, set: Mask) -> Self {
        self.filter(|m| m & set == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.constant_term().is_unit()
    }

    /// The inverse λ⁻¹ Σ_k (−λ⁻¹ m)^k of a unit λ + m.
    pub fn invert_unit(&self) -> Result<Self> {
        let lambda = self.constant_term();
        let linv = lambda.inv().ok_or_else(|| Error::NotAUnit(lambda.to_string()))?;
        let mut m = self.clone();
        m.terms.remove(&0);
        let t = m.scale(&-linv.clone());
        let mut sum = Self::one(self.n);
        let mut power = Self::one(self.n);
        for _ in 0..self.n {
            power = power.mul_unchecked(&t);
            if power.is_zero() {
                break;
            }
            sum += &power;
        }
        Ok(sum.scale(&linv))
    }

    /// The `k`-th power.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul_unchecked(self))
    }

    /// [a, b] = ab − ba.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Whether every term has degree `d`.
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == d)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// Lowest degree of a term, `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).max()
    }

    /// Whether the element lies in 𝔪^k.
    pub fn in_power_of_max_ideal(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize >= k)
    }

    /// Whether the element lies in the ideal (x_i).
    pub fn in_ideal_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m & bit(i) != 0)
    }

    /// Whether no term involves x_i.
    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m & bit(i) == 0)
    }

    /// Whether the element commutes with every generator.
    pub fn is_central(&self) -> bool {
        (1..=self.n).all(|i| {
            let x = Self::generator(self.n, i);
            self.commutator(&x).is_zero()
        })
    }

    /// Each monomial of Λₙ accepted by `keep` appears with probability
    /// `density`, carrying a random nonzero coefficient.
    pub fn random<R: Rng + ?Sized, F: Fn(Mask) -> bool>(n: usize, rng: &mut R, density: f64, keep: F) -> Self {
        let mut e = Self::zero(n);
        for m in 0..=full_mask(n) {
            if keep(m) && rng.gen_bool(density) {
                e.terms.insert(m, C::sample_nonzero(rng));
            }
        }
        e
    }
}

impl<C: Coefficient> AddAssign<&GrassmannElement<C>> for GrassmannElement<C> {
    fn add_assign(&mut self, o: &GrassmannElement<C>) {
        self.same_n(o).expect("dimension mismatch");
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&GrassmannElement<C>> for GrassmannElement<C> {
    fn sub_assign(&mut self, o: &GrassmannElement<C>) {
        self.same_n(o).expect("dimension mismatch");
        for (m, c) in &o.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<C: Coefficient> Add for &GrassmannElement<C> {
    type Output = GrassmannElement<C>;
    fn add(self, o: Self) -> GrassmannElement<C> {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<C: Coefficient> Sub for &GrassmannElement<C> {
    type Output = GrassmannElement<C>;
    fn sub(self, o: Self) -> GrassmannElement<C> {
        let mut r = self.clone();
        r -= o;
        r
    }
}

/// Panics on mismatched generator counts; see [`GrassmannElement::try_mul`].
impl<C: Coefficient> Mul for &GrassmannElement<C> {
    type Output = GrassmannElement<C>;
    fn mul(self, o: Self) -> GrassmannElement<C> {
        self.try_mul(o).expect("dimension mismatch")
    }
}

impl<C: Coefficient> Neg for &GrassmannElement<C> {
    type Output = GrassmannElement<C>;
    fn neg(self) -> GrassmannElement<C> {
        self.scale(&-C::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Coefficient> $tr for GrassmannElement<C> {
            type Output = GrassmannElement<C>;
            fn $f(self, o: Self) -> GrassmannElement<C> {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coefficient> Neg for GrassmannElement<C> {
    type Output = GrassmannElement<C>;
    fn neg(self) -> GrassmannElement<C> {
        -&self
    }
}

/// Iterates over the 1-based generator indices of a mask.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    indices(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::mask_of;
    use crate::coeff::{Fp, Rational};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type E = GrassmannElement<Rational>;
    type E5 = GrassmannElement<Fp<5>>;

    fn x(n: usize, i: usize) -> E {
        E::generator(n, i)
    }

    fn rational(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn generator_products() {
        assert_eq!(&x(3, 1) * &x(3, 2), E::monomial(3, 0b11, Rational::one()));
        assert_eq!(&x(3, 2) * &x(3, 1), E::monomial(3, 0b11, -Rational::one()));
        let x13 = &x(3, 1) * &x(3, 3);
        assert_eq!(&x13 * &x(3, 2), E::monomial(3, 0b111, -Rational::one()));
        let a = &E::one(3) + &x(3, 1);
        let b = &E::one(3) - &x(3, 1);
        assert_eq!(&a * &b, E::one(3));
    }

    #[test]
    fn mismatched_dimensions_are_reported() {
        assert_eq!(x(3, 1).try_mul(&x(4, 1)), Err(Error::DimensionMismatch { expected: 3, found: 4 }));
    }

    #[test]
    fn components_and_involution() {
        let e = &(&E::one(3) + &x(3, 1)) + &(&x(3, 1) * &x(3, 2));
        assert_eq!(e.component(Component::Degree(1)), x(3, 1));
        assert!(x(3, 1).component(Component::Even).is_zero());
        let f = &(&x(3, 1) * &x(3, 2)) + &x(3, 3);
        assert_eq!(f.involution(), &(&x(3, 1) * &x(3, 2)) - &x(3, 3));
        assert_eq!(E::one(3).involution(), E::one(3));
    }

    #[test]
    fn substitution_by_zero() {
        let e = &x(3, 1) + &(&x(3, 2) * &x(3, 3));
        assert_eq!(e.substitute_zero(bit(1)), &x(3, 2) * &x(3, 3));
        assert_eq!(e.substitute_zero(0), e);
        let x12 = &x(3, 1) * &x(3, 2);
        assert_eq!(x12.substitute_zero(bit(3)), x12);
    }

    #[test]
    fn unit_inverses() {
        let x12 = &x(3, 1) * &x(3, 2);
        let u = &E::one(3) + &x12;
        assert_eq!(u.invert_unit().unwrap(), &E::one(3) - &x12);
        assert_eq!(E::constant(2, rational(2, 1)).invert_unit().unwrap(), E::constant(2, rational(1, 2)));
        assert!(matches!(x(2, 1).invert_unit(), Err(Error::NotAUnit(_))));

        // Geometric series oracle: 1/(1+m) = 1 − m + m² − ⋯ computed by repeated multiplication.
        let e = &(&E::one(3) + &x(3, 1)) + &x12;
        let m = &e - &E::one(3);
        let mut oracle = E::zero(3);
        let mut p = E::one(3);
        for k in 0..4 {
            let term = if k % 2 == 0 { p.clone() } else { -&p };
            oracle += &term;
            p = &p * &m;
        }
        let inv = e.invert_unit().unwrap();
        assert_eq!(inv, oracle);
        assert!((&e * &inv).is_one());
    }

    #[test]
    fn generators_anticommute_and_square_to_zero() {
        let n = 6;
        for i in 1..=n {
            assert!((&x(n, i) * &x(n, i)).is_zero());
            for j in 1..=n {
                assert_eq!(&x(n, i) * &x(n, j), -&(&x(n, j) * &x(n, i)));
            }
        }
    }

    /// Brute-force commutant of the generators over the monomial basis.
    fn central_monomials(n: usize) -> Vec<Mask> {
        (0..=full_mask(n)).filter(|&m| E::monomial(n, m, Rational::one()).is_central()).collect()
    }

    #[test]
    fn center_is_even_part_plus_top_for_odd_n() {
        for n in [4usize, 5] {
            let expected: Vec<Mask> =
                (0..=full_mask(n)).filter(|m| m.count_ones() % 2 == 0 || *m == full_mask(n)).collect();
            assert_eq!(central_monomials(n), expected, "n = {n}");
        }
    }

    #[test]
    fn mask_indices_ascend() {
        assert_eq!(mask_indices(mask_of(&[5, 2, 3])), vec![2, 3, 5]);
    }

    fn arb_element(n: usize) -> impl Strategy<Value = E5> {
        prop::collection::vec((0..=full_mask(n), 1i64..5), 0..12)
            .prop_map(move |ts| E5::from_terms(n, ts.into_iter().map(|(m, c)| (m, Fp::new(c)))))
    }

    fn arb_max_ideal(n: usize) -> impl Strategy<Value = E5> {
        arb_element(n).prop_map(|e| e.filter(|m| m != 0))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn product_is_associative(a in arb_element(8), b in arb_element(8), c in arb_element(8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn involution_is_an_automorphism_of_order_two(a in arb_element(6), b in arb_element(6)) {
            prop_assert_eq!((&a * &b).involution(), &a.involution() * &b.involution());
            prop_assert_eq!(a.involution().involution(), a);
        }

        #[test]
        fn generators_normalise(a in arb_element(6), i in 1usize..=6) {
            let xi = E5::generator(6, i);
            prop_assert_eq!(&xi * &a, &a.involution() * &xi);
        }

        #[test]
        fn odd_elements_square_to_zero(a in arb_element(7)) {
            let odd = a.odd_part();
            prop_assert!((&odd * &odd).is_zero());
        }

        #[test]
        fn norm_is_square_of_even_part(a in arb_element(6)) {
            let ev = a.even_part();
            prop_assert_eq!(&a * &a.involution(), &ev * &ev);
        }

        #[test]
        fn parity_parts_sum_back(a in arb_element(6)) {
            prop_assert_eq!(&a.even_part() + &a.odd_part(), a);
        }

        #[test]
        fn max_ideal_is_nilpotent(fs in prop::collection::vec(arb_max_ideal(5), 6)) {
            let prod = fs.iter().fold(E5::one(5), |acc, f| &acc * f);
            prop_assert!(prod.is_zero());
        }

        #[test]
        fn units_invert(a in arb_max_ideal(6), c in 1i64..5) {
            let u = &E5::constant(6, Fp::new(c)) + &a;
            prop_assert!((&u * &u.invert_unit().unwrap()).is_one());
        }
    }

    #[test]
    fn random_respects_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = E::random(5, &mut rng, 0.5, |m| m.count_ones() == 3);
        assert!(e.is_homogeneous(3));
    }
}
