//! The standard model `(N; =, +, V2)`, used to cross-check the
//! non-standard one on its standard part.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::element::Element;
use crate::error::ArithError;
use crate::model::{Model, SamplerConfig};

/// An arbitrary-precision natural number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StdNat(pub BigUint);

impl StdNat {
    pub fn new(n: impl Into<BigUint>) -> Self {
        StdNat(n.into())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for StdNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for StdNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for StdNat {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ArithError::InvalidLiteral(s.to_string()));
        }
        BigUint::from_str(s)
            .map(StdNat)
            .map_err(|_| ArithError::InvalidLiteral(s.to_string()))
    }
}

/// Largest power of two dividing `x`, by trailing-zero count; `0` for `0`.
pub fn std_v2(x: &StdNat) -> StdNat {
    match x.0.trailing_zeros() {
        None => StdNat::default(),
        Some(e) => StdNat(BigUint::from(1u32) << e),
    }
}

/// The standard number `x` as an element of the non-standard model.
pub fn embed(x: &StdNat) -> Element {
    Element::standard(x.0.clone())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardModel;

impl Model for StandardModel {
    type Elem = StdNat;

    fn name(&self) -> &'static str {
        "std"
    }

    fn numeral(&self, n: u64) -> StdNat {
        StdNat::new(n)
    }

    fn add(&self, x: &StdNat, y: &StdNat) -> StdNat {
        StdNat(&x.0 + &y.0)
    }

    fn compare(&self, x: &StdNat, y: &StdNat) -> Ordering {
        x.cmp(y)
    }

    fn sub(&self, x: &StdNat, y: &StdNat) -> Option<StdNat> {
        (x >= y).then(|| StdNat(&x.0 - &y.0))
    }

    fn divide(&self, x: &StdNat, n: u64) -> Option<StdNat> {
        let (q, r) = x.0.div_rem(&BigUint::from(n));
        r.is_zero().then_some(StdNat(q))
    }

    fn residue_mod(&self, x: &StdNat, n: u64) -> u64 {
        (&x.0 % n).to_u64().expect("residue < n")
    }

    fn has_v2(&self) -> bool {
        true
    }

    fn v2(&self, x: &StdNat) -> Option<StdNat> {
        Some(std_v2(x))
    }

    fn next_power_of_two_above(&self, x: &StdNat) -> Option<StdNat> {
        let mut p = BigUint::from(1u32);
        while p <= x.0 {
            p <<= 1u32;
        }
        Some(StdNat(p))
    }

    fn parse_elem(&self, text: &str) -> Result<StdNat, ArithError> {
        text.parse()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, cfg: &SamplerConfig) -> StdNat {
        if rng.gen_bool(0.2) {
            let odd = 2 * rng.gen_range(0..50u64) + 1;
            StdNat(BigUint::from(odd) << rng.gen_range(0..=cfg.pow2_max))
        } else {
            StdNat::new(rng.gen_range(0..=cfg.offset_bound))
        }
    }

    fn sample_power_of_two<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cfg: &SamplerConfig,
    ) -> Option<StdNat> {
        Some(StdNat(BigUint::from(1u32) << rng.gen_range(0..=cfg.pow2_max)))
    }

    fn sample_between<R: Rng + ?Sized>(
        &self,
        lo: &StdNat,
        hi: &StdNat,
        rng: &mut R,
        _cfg: &SamplerConfig,
    ) -> Option<StdNat> {
        if hi <= lo {
            return None;
        }
        let gap = &hi.0 - &lo.0;
        if gap <= BigUint::from(1u32) {
            return None;
        }
        // Uniform enough: draw a u64 and reduce into [1, gap).
        let step = BigUint::from(rng.gen::<u64>()) % (&gap - 1u32) + 1u32;
        Some(StdNat(&lo.0 + step))
    }

    fn corner_cases(&self) -> Vec<StdNat> {
        let mut out: Vec<StdNat> = [0u64, 1, 2, 3].into_iter().map(StdNat::new).collect();
        out.extend((2..=10).map(|k| StdNat(BigUint::from(1u32) << k)));
        out
    }
}
