//! Non-negative arbitrary-precision rationals.
//!
//! Galaxy names in the model are non-negative rationals; this is a thin
//! newtype over [`BigRational`] that keeps the sign invariant and exposes the
//! handful of operations the model needs.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// A rational `num / den` in lowest terms with `num >= 0` and `den >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Builds `num / den`, reducing to lowest terms.
    ///
    /// Fails when `den` is zero.
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num.into()),
            BigInt::from_biguint(Sign::Plus, den),
        )))
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Rational(BigRational::from_integer(BigInt::from_biguint(
            Sign::Plus,
            n.into(),
        )))
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        let p = BigUint::one() << k.unsigned_abs();
        if k >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(1u32, p).expect("nonzero denominator")
        }
    }

    /// Wraps a signed rational, rejecting negative values.
    pub fn try_from_signed(r: BigRational) -> Result<Self, ArithError> {
        if r.is_negative() {
            Err(ArithError::NegativeResult)
        } else {
            Ok(Rational(r))
        }
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(&self.0 + &other.0)
    }

    /// `self - other`, failing if the result would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Result<Rational, ArithError> {
        Rational::try_from_signed(&self.0 - &other.0)
    }

    pub fn mul_int(&self, n: &BigUint) -> Rational {
        Rational(&self.0 * BigRational::from_integer(BigInt::from(n.clone())))
    }

    pub fn div_int(&self, n: &BigUint) -> Result<Rational, ArithError> {
        if n.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(
            &self.0 / BigRational::from_integer(BigInt::from(n.clone())),
        ))
    }

    /// Arithmetic mean of two rationals.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        Rational((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
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

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Parses `NAT` or `NAT/NAT`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::InvalidLiteral(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigUint::from_str(n).map_err(|_| bad())?;
        let den = BigUint::from_str(d).map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Rational::new(6u32, 4u32).unwrap();
        assert_eq!(r.numer(), BigUint::from(3u32));
        assert_eq!(r.denom(), BigUint::from(2u32));
        assert_eq!(r.to_string(), "3/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1u32, 0u32), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn negative_difference_rejected() {
        let a = Rational::new(1u32, 3u32).unwrap();
        let b = Rational::new(1u32, 2u32).unwrap();
        assert!(a.checked_sub(&b).is_err());
        assert_eq!(b.checked_sub(&a).unwrap(), Rational::new(1u32, 6u32).unwrap());
    }

    #[test]
    fn pow2_negative_exponent() {
        assert_eq!(Rational::pow2(-3).to_string(), "1/8");
        assert_eq!(Rational::pow2(5).to_string(), "32");
    }

    #[test]
    fn parse() {
        assert_eq!("10/4".parse::<Rational>().unwrap().to_string(), "5/2");
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert!("-1/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }
}
