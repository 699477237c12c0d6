//! Exact coefficient rings: arbitrary-precision rationals and prime fields
//! of odd characteristic, behind the [`Coefficient`] trait.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// An element of an exact commutative ring in which 2 is invertible.
pub trait Coefficient:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// The class of `num/den`, `None` when `den` is not invertible.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;
    /// 0 for the rationals, p for the prime field.
    fn characteristic() -> u64;
    /// A random element; rationals are drawn from small numerators and denominators.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Whether the printed form begins with a minus sign.
    fn is_negative(&self) -> bool;

    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let c = Self::sample(rng);
            if !c.is_zero() {
                return c;
            }
        }
    }

    fn half() -> Self {
        Self::from_i64(2).inv().expect("2 is invertible in every supported ring")
    }

    fn is_unit(&self) -> bool {
        self.inv().is_some()
    }

    /// Parses an integer `p` or a fraction `p/q`.
    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                Self::from_fraction(&BigInt::from_str(p.trim()).ok()?, &BigInt::from_str(q.trim()).ok()?)
            }
            None => Self::from_fraction(&BigInt::from_str(s).ok()?, &BigInt::one()),
        }
    }
}

/// Arbitrary-precision rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        (!den.is_zero()).then(|| Rational(BigRational::new(num.clone(), den.clone())))
    }
    fn characteristic() -> u64 {
        0
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num = rng.gen_range(-3i64..=3);
        let den = if rng.gen_bool(0.25) { rng.gen_range(1i64..=3) } else { 1 };
        Rational::new(num, den)
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

const fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field ℤ/P for an odd prime `P`, stored as a reduced residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const CHECKED: () = assert!(is_odd_prime(P), "modulus must be an odd prime");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECKED;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    /// The residue in `0..P`.
    pub fn value(self) -> u32 {
        self.0
    }

    fn signed(self) -> i64 {
        let v = self.0 as i64;
        if v > (P as i64) / 2 {
            v - P as i64
        } else {
            v
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

/// Prints the representative of least absolute value.
impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Coefficient for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P as u64 - 2))
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_i64().map(Fp::<P>::new);
        let d = reduce(den)?;
        Some(reduce(num)? * d.inv()?)
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(0..P) as i64)
    }
    fn is_negative(&self) -> bool {
        self.signed() < 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_inverses() {
        for v in 1..7 {
            let a = F7::new(v);
            assert!((a * a.inv().unwrap()).is_one());
        }
        assert!(F7::new(0).inv().is_none());
    }

    #[test]
    fn literals_parse_in_both_rings() {
        assert_eq!(Rational::parse_literal("-3/2"), Some(Rational::new(-3, 2)));
        assert_eq!(F7::parse_literal("1/2"), Some(F7::new(4)));
        assert_eq!(F7::parse_literal("3/7"), None);
        assert_eq!(Rational::parse_literal("1/0"), None);
    }

    #[test]
    fn display_uses_balanced_residues() {
        assert_eq!(F7::new(6).to_string(), "-1");
        assert_eq!(F7::new(3).to_string(), "3");
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn half_doubles_to_one() {
        assert!((F7::half() + F7::half()).is_one());
        assert!((Rational::half() + Rational::half()).is_one());
    }
}
