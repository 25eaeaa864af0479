//! Shared test oracles and generators.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;

use nsba_core::{Element, Rational};

/// Exponent of the concrete stand-in for `c`.
pub const L: u32 = 720;

/// Largest 2-exponent allowed in a denominator, far enough below `L` that
/// no sampled value reaches the truncation.
pub const MAX_TWO_EXP: u32 = 64;

/// `c := 2^720` is divisible by every small power of two and is 1 mod every
/// odd `o` for which the order of 2 divides 720. Restricted to galaxies with
/// such denominators, `(p/q, d) -> p * floor(c/q) + d` is an injective
/// homomorphism into the integers, since `c mod q` is exactly `t(q)`.
pub fn c() -> BigUint {
    BigUint::one() << L
}

pub fn odd_part(q: u64) -> u64 {
    q >> q.trailing_zeros()
}

pub fn admissible(q: u64) -> bool {
    let o = odd_part(q);
    q > 0
        && q.trailing_zeros() <= MAX_TWO_EXP
        && BigUint::from(2u32).modpow(&BigUint::from(L), &BigUint::from(o)) == BigUint::one() % o
}

pub fn admissible_odd(limit: u64) -> Vec<u64> {
    (1..=limit).step_by(2).filter(|&o| admissible(o)).collect()
}

pub fn concrete(x: &Element) -> BigInt {
    let r = x.galaxy();
    BigInt::from(r.numer() * (c() / r.denom())) + x.offset()
}

pub fn nu2(v: &BigInt) -> u64 {
    v.trailing_zeros().expect("non-zero")
}

pub fn element(p: u64, q: u64, d: i64) -> Element {
    Element::new(Rational::new(p, q).unwrap(), d).unwrap()
}

/// Elements whose galaxy denominator is admissible.
pub fn arb_element() -> impl Strategy<Value = Element> {
    let odds = admissible_odd(2000);
    let standard = (0i64..=1_000_000).prop_map(|d| element(0, 1, d));
    let binary = (0u64..4000, 0u32..=10, prop_oneof![Just(0i64), -1000i64..=1000])
        .prop_map(|(p, a, d)| element(p + 1, 1 << a, d));
    let general = (1u64..4000, proptest::sample::select(odds), 0u32..=6, -1_000_000i64..=1_000_000)
        .prop_map(|(p, o, a, d)| element(p, o << a, d));
    prop_oneof![1 => standard, 1 => binary, 3 => general]
}

/// Small moduli `n` that keep `q * n` admissible for every generated `q`.
pub fn arb_modulus() -> impl Strategy<Value = u64> {
    let odds: Vec<u64> = admissible_odd(100).into_iter().filter(|&o| o > 1).collect();
    prop_oneof![
        (1u32..=5).prop_map(|a| 1u64 << a),
        proptest::sample::select(odds.clone()),
        (proptest::sample::select(odds), 1u32..=3).prop_map(|(o, a)| o << a),
    ]
}
