//! Residues of the generator `c` and other number-theoretic helpers.
//!
//! The generator `c` is a non-standard power of two chosen so that `c - 1` is
//! divisible by every odd standard number. Hence for any modulus `q = 2^e * o`
//! (with `o` odd) the residue of `c` is `0` modulo `2^e` and `1` modulo `o`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ArithError;

/// Residue of `c` modulo `q`: the unique `t` in `[0, q)` with `t = 0 (mod 2^e)`
/// and `t = 1 (mod o)` where `q = 2^e * o`, `o` odd.
///
/// # Panics
///
/// Panics if `q` is zero.
pub fn t_residue(q: &BigUint) -> BigUint {
    assert!(!q.is_zero(), "t_residue: modulus must be positive");
    let e = q.trailing_zeros().unwrap_or(0);
    let odd = q >> e;
    if odd.is_one() {
        return BigUint::zero();
    }
    let two_part = BigUint::one() << e;
    // CRT: t = 2^e * (2^e)^{-1} mod odd, which is 0 mod 2^e and 1 mod odd.
    let inv = mod_inverse(&(&two_part % &odd), &odd).expect("2^e is a unit modulo an odd number");
    (two_part * inv) % q
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let g = a.extended_gcd(&m);
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&m).to_biguint()
}

/// Largest `e` such that `2^e` divides `m`.
pub fn nu2(m: &BigInt) -> Result<u64, ArithError> {
    m.trailing_zeros().ok_or(ArithError::ZeroValuation)
}

/// `nu2` for an unsigned value.
pub fn nu2_unsigned(m: &BigUint) -> Result<u64, ArithError> {
    m.trailing_zeros().ok_or(ArithError::ZeroValuation)
}

/// One period of the sequence `2^0, 2^1, 2^2, ... (mod n)` for odd `n >= 3`.
///
/// The period is the multiplicative order of 2 modulo `n` and divides
/// Euler's totient of `n`.
pub fn pow2_cycle_mod(n: u64) -> Result<Vec<u64>, ArithError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ArithError::InvalidModulus(format!(
            "{n}: expected an odd modulus >= 3"
        )));
    }
    let mut cycle = vec![1u64];
    let mut cur = 2 % n;
    while cur != 1 {
        cycle.push(cur);
        cur = ((cur as u128 * 2) % n as u128) as u64;
    }
    Ok(cycle)
}
