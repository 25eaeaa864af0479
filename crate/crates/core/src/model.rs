//! The interface every structure under test implements, and the
//! non-standard model itself.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::arith;
use crate::element::Element;
use crate::error::ArithError;
use crate::rational::Rational;

/// Bounds for random element generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Largest galaxy denominator drawn.
    pub den_bound: u64,
    /// Largest absolute offset drawn.
    pub offset_bound: u64,
    /// Largest exponent used when drawing powers of two.
    pub pow2_max: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            den_bound: 1000,
            offset_bound: 1_000_000,
            pow2_max: 64,
        }
    }
}

/// A structure for the language `{0, 1, +, <, =, ==_n, V2}`.
///
/// Models without `V2` return `None` from [`Model::v2`] and
/// [`Model::next_power_of_two_above`].
pub trait Model {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn name(&self) -> &'static str;
    fn numeral(&self, n: u64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn compare(&self, x: &Self::Elem, y: &Self::Elem) -> Ordering;
    /// The `z` with `y + z = x`, if `y <= x`.
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    /// The `y` with `n * y = x`, if one exists.
    fn divide(&self, x: &Self::Elem, n: u64) -> Option<Self::Elem>;
    fn residue_mod(&self, x: &Self::Elem, n: u64) -> u64;
    fn has_v2(&self) -> bool;
    fn v2(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn next_power_of_two_above(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, ArithError>;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, cfg: &SamplerConfig) -> Self::Elem;
    fn sample_power_of_two<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<Self::Elem>;
    /// An element strictly between `lo` and `hi`, if the interval is nonempty.
    fn sample_between<R: Rng + ?Sized>(
        &self,
        lo: &Self::Elem,
        hi: &Self::Elem,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<Self::Elem>;
    fn corner_cases(&self) -> Vec<Self::Elem>;
}

pub(crate) fn sample_offset<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> BigInt {
    let b = bound as i128;
    BigInt::from(rng.gen_range(-b..=b))
}

pub(crate) fn sample_galaxy<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig) -> Rational {
    let den = rng.gen_range(1..=cfg.den_bound.max(1));
    let num = rng.gen_range(1..=4 * cfg.den_bound.max(1));
    Rational::new(num, den).expect("den >= 1")
}

/// A galaxy of the form `a * 2^k` with small odd `a`.
pub(crate) fn sample_binary_galaxy<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let a = 2 * rng.gen_range(0..8u64) + 1;
    let k = rng.gen_range(-10..=10i64);
    Rational::pow2(k).mul_int(&BigUint::from(a))
}

/// Draws a value strictly between two rationals.
pub(crate) fn rational_between<R: Rng + ?Sized>(
    lo: &Rational,
    hi: &Rational,
    rng: &mut R,
    cfg: &SamplerConfig,
) -> Rational {
    let steps = cfg.den_bound.max(2);
    let k = rng.gen_range(1..steps);
    let gap = hi.checked_sub(lo).expect("lo < hi");
    let frac = Rational::new(k, steps).expect("steps >= 2");
    let scaled = Rational::try_from_signed(gap.as_big_rational() * frac.as_big_rational())
        .expect("non-negative");
    lo.add(&scaled)
}

/// The constructed countable non-standard model.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonStandardModel;

impl Model for NonStandardModel {
    type Elem = Element;

    fn name(&self) -> &'static str {
        "nonstd"
    }

    fn numeral(&self, n: u64) -> Element {
        Element::standard(n)
    }

    fn add(&self, x: &Element, y: &Element) -> Element {
        arith::add(x, y)
    }

    fn compare(&self, x: &Element, y: &Element) -> Ordering {
        arith::compare(x, y)
    }

    fn sub(&self, x: &Element, y: &Element) -> Option<Element> {
        arith::sub(x, y).ok()
    }

    fn divide(&self, x: &Element, n: u64) -> Option<Element> {
        arith::divide(x, &BigUint::from(n)).ok()
    }

    fn residue_mod(&self, x: &Element, n: u64) -> u64 {
        arith::residue_mod(x, &BigUint::from(n))
            .expect("n >= 1")
            .to_u64()
            .expect("residue < n")
    }

    fn has_v2(&self) -> bool {
        true
    }

    fn v2(&self, x: &Element) -> Option<Element> {
        Some(arith::v2(x))
    }

    fn next_power_of_two_above(&self, x: &Element) -> Option<Element> {
        Some(arith::next_power_of_two_above(x))
    }

    fn parse_elem(&self, text: &str) -> Result<Element, ArithError> {
        text.parse()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, cfg: &SamplerConfig) -> Element {
        match rng.gen_range(0..10) {
            0 | 1 => Element::standard(rng.gen_range(0..=cfg.offset_bound)),
            2 => {
                let d = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-3..=3) };
                Element::new(sample_binary_galaxy(rng), d).expect("non-standard")
            }
            3 => Element::new(Rational::new(1u32, 3u32).unwrap(), rng.gen_range(-20..=20))
                .expect("non-standard"),
            _ => Element::new(sample_galaxy(rng, cfg), sample_offset(rng, cfg.offset_bound))
                .expect("non-standard"),
        }
    }

    fn sample_power_of_two<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<Element> {
        if rng.gen_bool(0.3) {
            Some(Element::standard(
                BigUint::from(1u32) << rng.gen_range(0..=cfg.pow2_max),
            ))
        } else {
            let k = rng.gen_range(-20..=20i64);
            Some(Element::new(Rational::pow2(k), 0).expect("non-standard"))
        }
    }

    fn sample_between<R: Rng + ?Sized>(
        &self,
        lo: &Element,
        hi: &Element,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<Element> {
        if arith::compare(lo, hi) != Ordering::Less {
            return None;
        }
        if lo.galaxy() == hi.galaxy() {
            let gap = hi.offset() - lo.offset();
            let gap = gap.to_i128()?;
            if gap <= 1 {
                return None;
            }
            let step = rng.gen_range(1..gap);
            return Element::new(lo.galaxy().clone(), lo.offset() + step).ok();
        }
        let b = cfg.offset_bound.max(1) as i128;
        let candidate = match rng.gen_range(0..3) {
            0 => Element::new(lo.galaxy().clone(), lo.offset() + rng.gen_range(1..=b)),
            1 => Element::new(hi.galaxy().clone(), hi.offset() - rng.gen_range(1..=b)),
            _ => Element::new(
                rational_between(lo.galaxy(), hi.galaxy(), rng, cfg),
                sample_offset(rng, cfg.offset_bound),
            ),
        }
        .ok()?;
        let inside = arith::compare(lo, &candidate) == Ordering::Less
            && arith::compare(&candidate, hi) == Ordering::Less;
        inside.then_some(candidate)
    }

    fn corner_cases(&self) -> Vec<Element> {
        let el = |g: Rational, d: i64| Element::new(g, d).expect("valid corner case");
        let mut out = vec![
            Element::zero(),
            Element::standard(1u32),
            Element::standard(2u32),
            Element::generator(),
            el(Rational::one(), -1),
            el(Rational::one(), 1),
        ];
        for k in 1..=4 {
            out.push(el(Rational::pow2(k), 0));
            out.push(el(Rational::pow2(-k), 0));
        }
        let third = Rational::new(1u32, 3u32).unwrap();
        for d in [-1, 0, 1, 2] {
            out.push(el(third.clone(), d));
        }
        out
    }
}
