//! Text form of elements: a signed sum of terms such as `1 - 3/2*x1x3 + x2x4`.
//!
//! Factors may be juxtaposed or joined by `*`, generators may appear in any
//! order (the sign is computed), and parentheses group subexpressions.

use std::fmt;

use super::element::GrassmannElement;
use super::monomial::{indices, Mask};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

impl<C: Coefficient> GrassmannElement<C> {
    /// Parses an element of Λₙ.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        super::element::check_n(n)?;
        let mut p = Parser { src: text.as_bytes(), pos: 0, n };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn sum<C: Coefficient>(&mut self) -> Result<GrassmannElement<C>> {
        let mut acc = GrassmannElement::zero(self.n);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            if negative {
                acc -= &t;
            } else {
                acc += &t;
            }
            first = false;
        }
        Ok(acc)
    }

    fn term<C: Coefficient>(&mut self) -> Result<GrassmannElement<C>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'x') | Some(b'(') | Some(b'0'..=b'9') => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<C: Coefficient>(&mut self) -> Result<GrassmannElement<C>> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let digits = self.digits().ok_or_else(|| self.err("expected generator index after 'x'"))?;
                let i: usize = digits.parse().map_err(|_| self.err("generator index too large"))?;
                if !(1..=self.n).contains(&i) {
                    return Err(Error::Parse { position: at, message: format!("generator x{i} outside 1..={}", self.n) });
                }
                Ok(GrassmannElement::generator(self.n, i))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                self.digits();
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.digits().is_none() {
                        return Err(self.err("expected denominator"));
                    }
                } else {
                    self.pos = save;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let c = C::parse_literal(&lit.replace(char::is_whitespace, ""))
                    .ok_or_else(|| Error::Parse { position: start, message: format!("literal {lit} is not in the coefficient ring") })?;
                Ok(GrassmannElement::constant(self.n, c))
            }
            _ => Err(self.err("expected a number, a generator or '('")),
        }
    }
}

/// Orders terms by degree, then lexicographically by index sequence.
fn display_key(mask: Mask) -> (u32, Vec<usize>) {
    (mask.count_ones(), indices(mask).collect())
}

impl<C: Coefficient> fmt::Display for GrassmannElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Mask, &C)> = self.iter().collect();
        terms.sort_by_key(|(m, _)| display_key(*m));
        for (k, (mask, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: String = indices(mask).map(|i| format!("x{i}")).collect();
            if mask == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp, Rational};
    use proptest::prelude::*;

    type E = GrassmannElement<Rational>;

    #[test]
    fn grammar_example() {
        let e = E::parse(4, "1 - 3/2*x1x3 + x2x4").unwrap();
        assert_eq!(e.coeff(0b0101), Rational::new(-3, 2));
        assert_eq!(e.coeff(0b1010), Rational::new(1, 1));
        assert_eq!(e.to_string(), "1 - 3/2*x1x3 + x2x4");
    }

    #[test]
    fn unsorted_factors_carry_signs() {
        assert_eq!(E::parse(4, "x2x1").unwrap().to_string(), "-x1x2");
        assert_eq!(E::parse(4, "x2 * x2").unwrap(), E::zero(4));
        assert_eq!(E::parse(3, "x1(1 + x2x3)").unwrap().to_string(), "x1 + x1x2x3");
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(E::parse(3, " 2 / 3 x1 +x2").unwrap(), E::parse(3, "2/3*x1+x2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(E::parse(3, "x4"), Err(Error::Parse { .. })));
        assert!(matches!(E::parse(3, "x1 +"), Err(Error::Parse { .. })));
        assert!(matches!(E::parse(3, "1/0"), Err(Error::Parse { .. })));
        assert!(matches!(GrassmannElement::<Fp<3>>::parse(3, "1/3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(E::zero(2).to_string(), "0");
        assert_eq!(E::parse(2, "0").unwrap(), E::zero(2));
    }

    proptest! {
        #[test]
        fn display_round_trips(ts in prop::collection::vec((0u32..64, -5i64..5, 1i64..4), 0..10)) {
            let e = E::from_terms(6, ts.into_iter().map(|(m, p, q)| (m, Rational::new(p, q))));
            prop_assert_eq!(E::parse(6, &e.to_string()).unwrap(), e.clone());
            let f = GrassmannElement::<Fp<7>>::from_terms(6, e.iter().map(|(m, _)| (m, Fp::new(m as i64))));
            prop_assert_eq!(GrassmannElement::<Fp<7>>::parse(6, &f.to_string()).unwrap(), f);
        }
    }
}
