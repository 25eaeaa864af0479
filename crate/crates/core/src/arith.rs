//! Arithmetic in the non-standard model.
//!
//! Every element `(r, d)` can be written formally as `r*c + k` where
//! `k = d - shift(r)` and `shift(p/q) = p * t(q) / q`. Addition, scalar
//! multiplication, subtraction and division act linearly on `(r, k)`; the
//! offset of the result is recovered as `k' + shift(r')`, which is an integer
//! exactly when the result is an element of the model.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::element::Element;
use crate::error::ArithError;
use crate::rational::Rational;
use crate::residue::{nu2, nu2_unsigned, t_residue};

/// `p * t(q) / q` for `r = p/q`; `base(r) = r*c - shift(r)`.
fn shift(r: &Rational) -> BigRational {
    if r.is_zero() {
        return BigRational::zero();
    }
    let q = r.denom();
    let t = t_residue(&q);
    BigRational::new(BigInt::from(r.numer() * t), BigInt::from(q))
}

/// The constant part `k` of `x = r*c + k`.
fn constant_part(x: &Element) -> BigRational {
    BigRational::from_integer(x.offset().clone()) - shift(x.galaxy())
}

/// Rebuilds the element `r*c + k`, or `None` if that is not an element.
fn from_formal(galaxy: Rational, constant: BigRational) -> Option<Element> {
    let offset = constant + shift(&galaxy);
    if !offset.is_integer() {
        return None;
    }
    let offset = offset.to_integer();
    if galaxy.is_zero() && offset.is_negative() {
        return None;
    }
    Some(Element::from_parts_unchecked(galaxy, offset))
}

fn to_exact_integer(r: BigRational) -> BigInt {
    assert!(r.is_integer(), "expected an integral value, got {r}");
    r.to_integer()
}

/// `delta(r1, r2) = base(r1) + base(r2) - base(r1 + r2)`, always an integer.
pub fn delta(r1: &Rational, r2: &Rational) -> BigInt {
    to_exact_integer(shift(&r1.add(r2)) - shift(r1) - shift(r2))
}

/// `delta_n(r) = base(r) - n * base(r/n)`, always an integer.
pub fn delta_div(r: &Rational, n: &BigUint) -> BigInt {
    let reduced = r.div_int(n).expect("n >= 1");
    let n_rat = BigRational::from_integer(BigInt::from(n.clone()));
    to_exact_integer(n_rat * shift(&reduced) - shift(r))
}

pub fn add(x: &Element, y: &Element) -> Element {
    let galaxy = x.galaxy().add(y.galaxy());
    let offset = x.offset() + y.offset() + delta(x.galaxy(), y.galaxy());
    Element::from_parts_unchecked(galaxy, offset)
}

/// The unique `z` with `y + z = x`.
pub fn sub(x: &Element, y: &Element) -> Result<Element, ArithError> {
    if compare(x, y) == Ordering::Less {
        return Err(ArithError::NegativeResult);
    }
    let galaxy = x.galaxy().checked_sub(y.galaxy())?;
    let constant = constant_part(x) - constant_part(y);
    Ok(from_formal(galaxy, constant).expect("difference of elements is an element"))
}

/// Galaxies first, then offsets.
pub fn compare(x: &Element, y: &Element) -> Ordering {
    x.galaxy()
        .cmp(y.galaxy())
        .then_with(|| x.offset().cmp(y.offset()))
}

/// `n * x`, i.e. `x` added to itself `n` times.
pub fn scalar_mul(n: &BigUint, x: &Element) -> Element {
    if n.is_zero() {
        return Element::zero();
    }
    let galaxy = x.galaxy().mul_int(n);
    let constant = constant_part(x) * BigRational::from_integer(BigInt::from(n.clone()));
    from_formal(galaxy, constant).expect("multiple of an element is an element")
}

/// The `y` with `n * y = x`, if any.
pub fn divide(x: &Element, n: &BigUint) -> Result<Element, ArithError> {
    if n.is_zero() {
        return Err(ArithError::InvalidModulus("0".into()));
    }
    let numerator = x.offset() + delta_div(x.galaxy(), n);
    let n_int = BigInt::from(n.clone());
    if !numerator.is_multiple_of(&n_int) {
        return Err(ArithError::NotDivisible);
    }
    let galaxy = x.galaxy().div_int(n)?;
    Ok(Element::from_parts_unchecked(galaxy, numerator / n_int))
}

/// The unique `j` in `[0, n)` such that `x - j` is divisible by `n`.
pub fn residue_mod(x: &Element, n: &BigUint) -> Result<BigUint, ArithError> {
    if n.is_zero() {
        return Err(ArithError::InvalidModulus("0".into()));
    }
    let numerator = x.offset() + delta_div(x.galaxy(), n);
    Ok(numerator
        .mod_floor(&BigInt::from(n.clone()))
        .to_biguint()
        .expect("floor residue is non-negative"))
}

/// The largest power of two dividing `x`, with `v2(0) = 0`.
///
/// For `x = (p/q, d)` put `w = q*d - p*t(q)`, so that `q*x = p*c + w`. If
/// `w = 0` then `x` is a binary-rational multiple of `c` and its valuation is
/// `2^(nu2(p) - nu2(q)) * c`; otherwise the huge 2-adic valuation of `c`
/// leaves `nu2(w) - nu2(q)`.
pub fn v2(x: &Element) -> Element {
    let r = x.galaxy();
    let d = x.offset();
    if r.is_zero() {
        if d.is_zero() {
            return Element::zero();
        }
        let e = nu2(d).expect("nonzero");
        return Element::standard(BigUint::one() << e);
    }
    let (p, q) = (r.numer(), r.denom());
    let w = hyper_defect(x);
    let nu_q = nu2_unsigned(&q).expect("q >= 1");
    if w.is_zero() {
        let nu_p = nu2_unsigned(&p).expect("p >= 1") as i64;
        return Element::from_parts_unchecked(Rational::pow2(nu_p - nu_q as i64), BigInt::zero());
    }
    let e = nu2(&w).expect("nonzero");
    debug_assert!(e >= nu_q);
    Element::standard(BigUint::one() << (e - nu_q))
}

/// `q*d - p*t(q)` for `x = (p/q, d)`; zero exactly at the hypernumbers.
fn hyper_defect(x: &Element) -> BigInt {
    let r = x.galaxy();
    let q = r.denom();
    let t = t_residue(&q);
    BigInt::from(q) * x.offset() - BigInt::from(r.numer() * t)
}

pub fn is_standard(x: &Element) -> bool {
    x.galaxy().is_zero()
}

/// Non-standard and divisible by every standard power of two.
pub fn is_hypernumber(x: &Element) -> bool {
    !is_standard(x) && hyper_defect(x).is_zero()
}

pub fn is_power_of_two(x: &Element) -> bool {
    !x.is_zero() && v2(x) == *x
}

/// A power of two strictly above `x`.
///
/// Standard `x`: the least standard `2^m > d`. Otherwise `2^k * c` for the
/// least `k` with `2^k >= r + 1`.
pub fn next_power_of_two_above(x: &Element) -> Element {
    if is_standard(x) {
        let d = x.offset().magnitude();
        let mut p = BigUint::one();
        while &p <= d {
            p <<= 1u32;
        }
        return Element::standard(p);
    }
    let bound = x.galaxy().add(&Rational::one());
    let mut k = 1i64;
    while Rational::pow2(k) < bound {
        k += 1;
    }
    Element::from_parts_unchecked(Rational::pow2(k), BigInt::zero())
}

/// Points below, between and above two non-standard galaxies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitnesses {
    /// In galaxy `r_x / 2`.
    pub below: Element,
    /// In galaxy `(r_x + r_y) / 2`.
    pub mid: Element,
    /// In galaxy `2 * r_y`.
    pub above: Element,
}

/// `floor(x / 2)`: subtract the parity of `x`, then halve.
fn halve_down(x: &Element) -> Element {
    let two = BigUint::from(2u32);
    let parity = residue_mod(x, &two).expect("2 >= 1");
    let even = sub(x, &Element::standard(parity)).expect("parity <= x");
    divide(&even, &two).expect("even element halves")
}

/// Witnesses that the galaxy order is dense and has no endpoints.
///
/// Requires both elements non-standard with `galaxy(x) < galaxy(y)`.
pub fn density_witnesses(x: &Element, y: &Element) -> Result<DensityWitnesses, ArithError> {
    if is_standard(x) || is_standard(y) {
        return Err(ArithError::Precondition("density witnesses need non-standard elements"));
    }
    if x.galaxy() >= y.galaxy() {
        return Err(ArithError::Precondition("galaxies must be strictly ordered"));
    }
    Ok(DensityWitnesses {
        below: halve_down(x),
        mid: halve_down(&add(x, y)),
        above: add(y, y),
    })
}
