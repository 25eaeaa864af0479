//! Elements of the non-standard model and their literal syntax.
//!
//! An element is a pair `(r, d)` of a galaxy name `r` (a non-negative
//! rational) and an integer offset `d`. It denotes `base(r) + d`, where
//! `base(0) = 0` and `base(p/q) = p * (c - t(q)) / q` with `t(q)` the residue
//! of the generator `c` modulo `q`.
//!
//! Literal grammar:
//!
//! ```text
//! element  := INT | coef "c" (("+" | "-") NAT)?
//! coef     := (NAT ("/" NAT)?)? | "(" NAT "/" NAT ")"
//! ```
//!
//! plus the sugar `c/N` for a `1/N` coefficient. The printer emits `d` for
//! standard elements and `(p/q)c+d` otherwise, dropping zero parts and unit
//! coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    galaxy: Rational,
    offset: BigInt,
}

impl Element {
    /// Fails if `galaxy` is zero and `offset` is negative.
    pub fn new(galaxy: Rational, offset: impl Into<BigInt>) -> Result<Self, ArithError> {
        let offset = offset.into();
        if galaxy.is_zero() && offset.is_negative() {
            return Err(ArithError::NegativeStandard);
        }
        Ok(Element { galaxy, offset })
    }

    pub fn zero() -> Self {
        Element::standard(0u32)
    }

    pub fn standard(n: impl Into<BigUint>) -> Self {
        Element {
            galaxy: Rational::zero(),
            offset: BigInt::from(n.into()),
        }
    }

    /// The generator `c`, a non-standard power of two.
    pub fn generator() -> Self {
        Element {
            galaxy: Rational::one(),
            offset: BigInt::zero(),
        }
    }

    pub fn galaxy(&self) -> &Rational {
        &self.galaxy
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.galaxy.is_zero() && self.offset.is_zero()
    }

    /// Builds an element without checking the standard-offset invariant.
    pub(crate) fn from_parts_unchecked(galaxy: Rational, offset: BigInt) -> Self {
        debug_assert!(!(galaxy.is_zero() && offset.is_negative()));
        Element { galaxy, offset }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.galaxy.is_zero() {
            return write!(f, "{}", self.offset);
        }
        if self.galaxy.is_integer() {
            if !self.galaxy.numer().is_one() {
                write!(f, "{}", self.galaxy)?;
            }
        } else {
            write!(f, "({})", self.galaxy)?;
        }
        f.write_str("c")?;
        if self.offset.is_positive() {
            write!(f, "+{}", self.offset)?;
        } else if self.offset.is_negative() {
            write!(f, "{}", self.offset)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.galaxy, self.offset)
    }
}

fn parse_nat(s: &str, whole: &str) -> Result<BigUint, ArithError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ArithError::InvalidLiteral(whole.to_string()));
    }
    BigUint::from_str(s).map_err(|_| ArithError::InvalidLiteral(whole.to_string()))
}

fn parse_coef(s: &str, whole: &str) -> Result<Rational, ArithError> {
    let inner = match s.strip_prefix('(') {
        Some(rest) => rest
            .strip_suffix(')')
            .ok_or_else(|| ArithError::InvalidLiteral(whole.to_string()))?,
        None => s,
    };
    if inner.is_empty() {
        return if s.is_empty() {
            Ok(Rational::one())
        } else {
            Err(ArithError::InvalidLiteral(whole.to_string()))
        };
    }
    match inner.split_once('/') {
        Some((n, d)) => Rational::new(parse_nat(n, whole)?, parse_nat(d, whole)?),
        None => Ok(Rational::from_integer(parse_nat(inner, whole)?)),
    }
}

impl FromStr for Element {
    type Err = ArithError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ArithError::InvalidLiteral(text.to_string());
        let Some(cpos) = s.find('c') else {
            let (neg, digits) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s.strip_prefix('+').unwrap_or(&s)),
            };
            let n = parse_nat(digits, text)?;
            if neg && !n.is_zero() {
                return Err(ArithError::NegativeStandard);
            }
            return Ok(Element::standard(n));
        };
        let (coef_text, rest) = (&s[..cpos], &s[cpos + 1..]);
        let mut galaxy = parse_coef(coef_text, text)?;
        let mut rest = rest;
        if let Some(after) = rest.strip_prefix('/') {
            if !coef_text.is_empty() {
                return Err(bad());
            }
            let end = after.find(['+', '-']).unwrap_or(after.len());
            let den = parse_nat(&after[..end], text)?;
            galaxy = galaxy.div_int(&den).map_err(|_| bad())?;
            rest = &after[end..];
        }
        let offset = if rest.is_empty() {
            BigInt::zero()
        } else if let Some(n) = rest.strip_prefix('+') {
            BigInt::from(parse_nat(n, text)?)
        } else if let Some(n) = rest.strip_prefix('-') {
            -BigInt::from(parse_nat(n, text)?)
        } else {
            return Err(bad());
        };
        Element::new(galaxy, offset)
    }
}
