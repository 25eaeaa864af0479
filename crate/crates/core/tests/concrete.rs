//! Core arithmetic checked against a concrete truncation of the model in the
//! integers (see `common::concrete`).

mod common;

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;
use nsba_core::{arith, ArithError, Element};

#[test]
fn truncation_reproduces_residues() {
    for q in (1..5000u64).filter(|&q| admissible(q)) {
        let t = nsba_core::residue::t_residue(&BigUint::from(q));
        assert_eq!(t, c() % q, "q = {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn add_is_homomorphic(x in arb_element(), y in arb_element()) {
        prop_assert_eq!(concrete(&arith::add(&x, &y)), concrete(&x) + concrete(&y));
    }

    #[test]
    fn compare_matches_integers(x in arb_element(), y in arb_element()) {
        prop_assert_eq!(arith::compare(&x, &y), concrete(&x).cmp(&concrete(&y)));
    }

    #[test]
    fn sub_matches_integers(x in arb_element(), y in arb_element()) {
        let diff = concrete(&x) - concrete(&y);
        match arith::sub(&x, &y) {
            Ok(z) => prop_assert_eq!(concrete(&z), diff),
            Err(e) => {
                prop_assert_eq!(e, ArithError::NegativeResult);
                prop_assert!(diff.is_negative());
            }
        }
    }

    #[test]
    fn scalar_mul_matches_integers(x in arb_element(), n in 0u64..1000) {
        let got = arith::scalar_mul(&BigUint::from(n), &x);
        prop_assert_eq!(concrete(&got), concrete(&x) * n);
    }

    #[test]
    fn divide_and_residue_match_integers(x in arb_element(), n in arb_modulus()) {
        prop_assume!(admissible(x.galaxy().denom().try_into().unwrap_or(0u64) * n));
        let (cx, big_n) = (concrete(&x), BigInt::from(n));
        let residue = arith::residue_mod(&x, &BigUint::from(n)).unwrap();
        prop_assert_eq!(BigInt::from(residue), cx.mod_floor(&big_n));
        match arith::divide(&x, &BigUint::from(n)) {
            Ok(y) => prop_assert_eq!(concrete(&y) * n, cx),
            Err(e) => {
                prop_assert_eq!(e, ArithError::NotDivisible);
                prop_assert!(!cx.is_multiple_of(&big_n));
            }
        }
    }

    #[test]
    fn v2_is_the_largest_power_of_two_divisor(x in arb_element()) {
        prop_assume!(!x.is_zero());
        let expected = BigInt::one() << nu2(&concrete(&x));
        prop_assert_eq!(concrete(&arith::v2(&x)), expected);
    }

    #[test]
    fn hypernumbers_are_deeply_divisible(x in arb_element()) {
        prop_assume!(!x.is_zero());
        let deep = nu2(&concrete(&x)) > u64::from(L) / 2;
        prop_assert_eq!(arith::is_hypernumber(&x), deep);
    }

    #[test]
    fn next_power_is_a_power_above(x in arb_element()) {
        let p = arith::next_power_of_two_above(&x);
        let cp = concrete(&p);
        prop_assert!(cp > concrete(&x));
        prop_assert_eq!(cp.clone(), BigInt::one() << nu2(&cp));
    }
}

/// The closed form `V2((a 2^k / b)(c - 1) + d) = V2(b d 2^-k - a)`, read
/// for `k < 0`, does not apply: `(a 2^k / b)(c - 1)` is then not an element; the
/// galaxy `a / (b 2^j)` has base `a (c - t) / (b 2^j)` with `t` even. The
/// model's values are checked against the truncation; agreement with the
/// literal formula is only counted.
#[test]
fn negative_exponent_values_follow_the_truncation() {
    let odds: Vec<u64> = admissible_odd(200).into_iter().filter(|&b| b >= 3).collect();
    let (mut total, mut literal_agrees) = (0u32, 0u32);
    for &b in &odds {
        for a in (1..60u64).step_by(2).filter(|a| a.gcd(&b) == 1) {
            for j in 1..=6u32 {
                for d in -40i64..=40 {
                    let x = element(a, b << j, d);
                    let v = arith::v2(&x);
                    let expected = BigInt::one() << nu2(&concrete(&x));
                    assert_eq!(concrete(&v), expected, "{x:?}");
                    assert!(arith::is_standard(&v), "{x:?}");
                    let literal = i128::from(b) * i128::from(d) * (1 << j) - i128::from(a);
                    let literal_v2 = Element::standard(1u64 << literal.unsigned_abs().trailing_zeros());
                    total += 1;
                    literal_agrees += u32::from(literal_v2 == v);
                }
            }
        }
    }
    // The literal formula gives 1 whenever a is odd; the model does not.
    println!("k < 0: literal formula agrees on {literal_agrees} of {total} elements");
    assert!(literal_agrees < total);
}

#[test]
fn density_witnesses_sit_in_the_right_galaxies() {
    let x = element(1, 3, 5);
    let y = element(7, 4, -2);
    let w = arith::density_witnesses(&x, &y).unwrap();
    let ordered = [&w.below, &x, &w.mid, &y, &w.above];
    for pair in ordered.windows(2) {
        assert_eq!(arith::compare(pair[0], pair[1]), Ordering::Less);
        assert!(concrete(pair[0]) < concrete(pair[1]));
    }
    assert!(!w.below.galaxy().is_zero());
}

#[test]
fn standard_elements_are_their_offsets() {
    for d in 0..500u32 {
        assert_eq!(concrete(&Element::standard(d)), BigInt::from(d));
    }
    assert!(concrete(&Element::generator()).is_positive());
    assert!(BigInt::zero() < concrete(&element(1, 1 << 10, 0)));
}
