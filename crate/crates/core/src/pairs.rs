//! The recursive pairs model of Presburger arithmetic and why it admits no
//! `V_n`.
//!
//! Elements are pairs `(g, n)` with `g` a non-negative rational, `n` an
//! integer and `n >= 0` whenever `g = 0`; addition is componentwise and the
//! order lexicographic. A non-standard power of two `(g, n)` would have to be
//! divisible by every standard power of two, which fails when `n != 0`
//! (halving stops once `n` is odd), while `(g, 0)` is divisible by 3, which no
//! power of two is.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::ArithError;
use crate::model::{rational_between, sample_binary_galaxy, sample_galaxy, sample_offset, Model, SamplerConfig};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairElement {
    g: Rational,
    n: BigInt,
}

impl PairElement {
    pub fn new(g: Rational, n: impl Into<BigInt>) -> Result<Self, ArithError> {
        let n = n.into();
        if g.is_zero() && n.is_negative() {
            return Err(ArithError::NegativeStandard);
        }
        Ok(PairElement { g, n })
    }

    pub fn standard(n: impl Into<BigUint>) -> Self {
        PairElement {
            g: Rational::zero(),
            n: BigInt::from(n.into()),
        }
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }
}

impl fmt::Display for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.n)
    }
}

impl fmt::Debug for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PairElement {
    type Err = ArithError;

    /// Parses `(RAT, INT)`, e.g. `(5/7, 6)`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::InvalidLiteral(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (g, n) = inner.split_once(',').ok_or_else(bad)?;
        let g: Rational = g.trim().parse().map_err(|_| bad())?;
        let n = n.trim();
        let digits = n.strip_prefix('-').unwrap_or(n);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        PairElement::new(g, n)
    }
}

pub fn p_add(x: &PairElement, y: &PairElement) -> PairElement {
    PairElement {
        g: x.g.add(&y.g),
        n: &x.n + &y.n,
    }
}

pub fn p_compare(x: &PairElement, y: &PairElement) -> Ordering {
    x.g.cmp(&y.g).then_with(|| x.n.cmp(&y.n))
}

pub fn p_scalar_mul(k: &BigUint, x: &PairElement) -> PairElement {
    PairElement {
        g: x.g.mul_int(k),
        n: &x.n * BigInt::from(k.clone()),
    }
}

pub fn p_divide(x: &PairElement, k: &BigUint) -> Result<PairElement, ArithError> {
    if k.is_zero() {
        return Err(ArithError::InvalidModulus("0".into()));
    }
    let k_int = BigInt::from(k.clone());
    if !x.n.is_multiple_of(&k_int) {
        return Err(ArithError::NotDivisible);
    }
    Ok(PairElement {
        g: x.g.div_int(k)?,
        n: &x.n / k_int,
    })
}

/// Why a pair cannot be a non-standard power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Halving is possible exactly `steps` times; `chain` runs from the
    /// candidate down to a pair with odd second coordinate.
    FiniteTwoDivisibility { steps: u64, chain: Vec<PairElement> },
    /// The candidate is three times `quotient`.
    DivisibleByThree { quotient: PairElement },
}

impl Verdict {
    /// Re-checks the witness against `candidate` from scratch.
    pub fn validate(&self, candidate: &PairElement) -> bool {
        match self {
            Verdict::FiniteTwoDivisibility { steps, chain } => {
                let two = BigUint::from(2u32);
                chain.first() == Some(candidate)
                    && chain.len() as u64 == steps + 1
                    && chain.windows(2).all(|w| p_scalar_mul(&two, &w[1]) == w[0])
                    && chain.last().is_some_and(|last| last.n.is_odd())
            }
            Verdict::DivisibleByThree { quotient } => {
                p_scalar_mul(&BigUint::from(3u32), quotient) == *candidate
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FiniteTwoDivisibility { steps, chain } => {
                write!(f, "FINITE_TWO_DIVISIBILITY {steps}")?;
                let links: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
                write!(f, "\n{}", links.join(" -> "))
            }
            Verdict::DivisibleByThree { quotient } => write!(f, "DIVISIBLE_BY_THREE {quotient}"),
        }
    }
}

/// Refutes that a non-standard pair could be a power of two.
pub fn refute_power2_candidate(x: &PairElement) -> Result<Verdict, ArithError> {
    if x.g.is_zero() {
        return Err(ArithError::Precondition(
            "candidate must be non-standard (g > 0)",
        ));
    }
    if x.n.is_zero() {
        let quotient = p_divide(x, &BigUint::from(3u32))?;
        return Ok(Verdict::DivisibleByThree { quotient });
    }
    let two = BigUint::from(2u32);
    let mut chain = vec![x.clone()];
    while let Ok(half) = p_divide(chain.last().expect("nonempty"), &two) {
        chain.push(half);
    }
    Ok(Verdict::FiniteTwoDivisibility {
        steps: chain.len() as u64 - 1,
        chain,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PairsModel;

impl Model for PairsModel {
    type Elem = PairElement;

    fn name(&self) -> &'static str {
        "pairs"
    }

    fn numeral(&self, n: u64) -> PairElement {
        PairElement::standard(n)
    }

    fn add(&self, x: &PairElement, y: &PairElement) -> PairElement {
        p_add(x, y)
    }

    fn compare(&self, x: &PairElement, y: &PairElement) -> Ordering {
        p_compare(x, y)
    }

    fn sub(&self, x: &PairElement, y: &PairElement) -> Option<PairElement> {
        if p_compare(x, y) == Ordering::Less {
            return None;
        }
        PairElement::new(x.g.checked_sub(&y.g).ok()?, &x.n - &y.n).ok()
    }

    fn divide(&self, x: &PairElement, n: u64) -> Option<PairElement> {
        p_divide(x, &BigUint::from(n)).ok()
    }

    fn residue_mod(&self, x: &PairElement, n: u64) -> u64 {
        x.n.mod_floor(&BigInt::from(n)).to_u64().expect("residue < n")
    }

    fn has_v2(&self) -> bool {
        false
    }

    fn v2(&self, _x: &PairElement) -> Option<PairElement> {
        None
    }

    fn next_power_of_two_above(&self, _x: &PairElement) -> Option<PairElement> {
        None
    }

    fn parse_elem(&self, text: &str) -> Result<PairElement, ArithError> {
        text.parse()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, cfg: &SamplerConfig) -> PairElement {
        match rng.gen_range(0..10) {
            0 | 1 => PairElement::standard(rng.gen_range(0..=cfg.offset_bound)),
            2 => PairElement::new(sample_binary_galaxy(rng), rng.gen_range(-3..=3)).expect("g > 0"),
            _ => PairElement::new(sample_galaxy(rng, cfg), sample_offset(rng, cfg.offset_bound))
                .expect("g > 0"),
        }
    }

    fn sample_power_of_two<R: Rng + ?Sized>(
        &self,
        _rng: &mut R,
        _cfg: &SamplerConfig,
    ) -> Option<PairElement> {
        None
    }

    fn sample_between<R: Rng + ?Sized>(
        &self,
        lo: &PairElement,
        hi: &PairElement,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<PairElement> {
        if p_compare(lo, hi) != Ordering::Less {
            return None;
        }
        let candidate = if lo.g == hi.g {
            let gap = (&hi.n - &lo.n).to_i128()?;
            if gap <= 1 {
                return None;
            }
            PairElement::new(lo.g.clone(), &lo.n + rng.gen_range(1..gap)).ok()?
        } else {
            PairElement::new(
                rational_between(&lo.g, &hi.g, rng, cfg),
                sample_offset(rng, cfg.offset_bound),
            )
            .ok()?
        };
        Some(candidate)
    }

    fn corner_cases(&self) -> Vec<PairElement> {
        let mut out = vec![
            PairElement::standard(0u32),
            PairElement::standard(1u32),
            PairElement::standard(2u32),
        ];
        for (g, n) in [("1", 0), ("1", -1), ("1", 1), ("1/2", 0), ("2", 0), ("1/3", 1)] {
            out.push(PairElement::new(g.parse().unwrap(), n).unwrap());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pe(s: &str) -> PairElement {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p_add(&pe("(0,3)"), &pe("(0,4)")), pe("(0,7)"));
        assert_eq!(p_add(&pe("(1/2,-3)"), &pe("(1/2,3)")), pe("(1,0)"));
        assert_eq!(p_add(&pe("(2,5)"), &pe("(0,1)")), pe("(2,6)"));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(p_compare(&pe("(0,1000000)"), &pe("(1/100,-1000000)")), Ordering::Less);
        assert_eq!(p_compare(&pe("(1,2)"), &pe("(1,2)")), Ordering::Equal);
        assert_eq!(p_compare(&pe("(3,-1)"), &pe("(2,9)")), Ordering::Greater);
    }

    #[test]
    fn literal_syntax() {
        assert_eq!(pe("(5/7, 6)").to_string(), "(5/7,6)");
        assert_eq!(pe("( 10/4 ,-3 )").to_string(), "(5/2,-3)");
        for bad in ["(0,-1)", "5/7,6", "(5/7)", "(a,1)", "(1,1.5)", "(1,)"] {
            assert!(bad.parse::<PairElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn refutation_examples() {
        let x = pe("(5/7,6)");
        let v = refute_power2_candidate(&x).unwrap();
        assert_eq!(
            v,
            Verdict::FiniteTwoDivisibility {
                steps: 1,
                chain: vec![x.clone(), pe("(5/14,3)")]
            }
        );
        assert!(v.validate(&x));

        let x = pe("(2,0)");
        let v = refute_power2_candidate(&x).unwrap();
        assert_eq!(v, Verdict::DivisibleByThree { quotient: pe("(2/3,0)") });
        assert!(v.validate(&x));
        assert_eq!(v.to_string(), "DIVISIBLE_BY_THREE (2/3,0)");

        let x = pe("(1/3,1)");
        let v = refute_power2_candidate(&x).unwrap();
        assert!(matches!(v, Verdict::FiniteTwoDivisibility { steps: 0, .. }));
        assert!(v.validate(&x));

        assert!(refute_power2_candidate(&pe("(0,4)")).is_err());
    }

    #[test]
    fn tampered_verdicts_fail_validation() {
        let x = pe("(5/7,12)");
        let v = Verdict::FiniteTwoDivisibility { steps: 1, chain: vec![x.clone(), pe("(5/14,6)")] };
        assert!(!v.validate(&x), "chain stops at an even coordinate");
        let v = Verdict::DivisibleByThree { quotient: pe("(1,0)") };
        assert!(!v.validate(&pe("(2,0)")));
    }

    #[test]
    fn steps_equal_two_adic_valuation_of_second_coordinate() {
        for n in [-96i64, -7, 1, 2, 40, 1 << 20] {
            let x = PairElement::new("3/4".parse().unwrap(), n).unwrap();
            match refute_power2_candidate(&x).unwrap() {
                Verdict::FiniteTwoDivisibility { steps, .. } => {
                    assert_eq!(steps, n.trailing_zeros() as u64)
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
