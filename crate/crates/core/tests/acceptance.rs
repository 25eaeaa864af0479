//! Acceptance gate. Runs every criterion, prints one line each and exits
//! non-zero if any of them fails.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsba_core::arith;
use nsba_core::logic::{run_suite, Status, SuiteConfig};
use nsba_core::oracle::embed;
use nsba_core::pairs::refute_power2_candidate;
use nsba_core::{
    Element, Model, NonStandardModel, PairElement, PairsModel, Rational, SamplerConfig,
    StandardModel, StdNat, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(p: u64, q: u64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn el(g: Rational, d: i64) -> Element {
    Element::new(g, d).unwrap()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail}, {:.2}s", took.as_secs_f64()))
    } else {
        Err(format!("{detail}, but took {:.2}s > {}s", took.as_secs_f64(), limit.as_secs()))
    }
}

/// Exponent of 2 in a non-zero integer.
fn nu2_i128(w: i128) -> u32 {
    w.unsigned_abs().trailing_zeros()
}

/// The residue of `c` mod `q`, found by search.
fn t_brute(q: u64) -> u64 {
    let two_part = 1u64 << q.trailing_zeros();
    let odd_part = q / two_part;
    (0..q)
        .find(|t| t % two_part == 0 && t % odd_part == 1 % odd_part)
        .unwrap()
}

/// `p * t(q) / q` as an exact rational, from first principles.
fn shift_oracle(r: &BigRational) -> BigRational {
    let q: u64 = r.denom().try_into().unwrap();
    r * BigRational::from_integer(BigInt::from(t_brute(q)))
}

fn c1_closed_form() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    while n < 10_000 {
        let a: i128 = rng.gen_range(0..500) * 2 + 1;
        let b: i128 = rng.gen_range(1..500) * 2 + 1;
        if a.gcd(&b) != 1 {
            continue;
        }
        let k: u32 = rng.gen_range(0..=20);
        let d: i128 = rng.gen_range(-1_000_000..=1_000_000);
        let a2k = a << k;
        let x = el(rat(a2k as u64, b as u64), d as i64);
        let expected = Element::standard(1u64 << nu2_i128(b * d - a2k));
        let got = arith::v2(&x);
        if got != expected {
            return Err(format!("v2{x:?} = {got}, expected {expected}"));
        }
        n += 1;
    }
    within(Duration::from_secs(10), start, format!("{n} samples agree"))
}

fn c2_worked_example() -> Outcome {
    let x = el(rat(2, 5), 3);
    let three = BigUint::from(3u32);
    let q = arith::divide(&x, &three).map_err(|e| e.to_string())?;
    let r = arith::residue_mod(&x, &three).map_err(|e| e.to_string())?;
    if q != el(rat(2, 15), 1) || !r.is_zero() {
        return Err(format!("divide = {q:?}, residue = {r}"));
    }
    Ok(format!("{x} / 3 = {q}, residue 0"))
}

fn c3_axiom_suite() -> Outcome {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let mut lines = 0;
    let mut check = |name: &str, reports: Vec<nsba_core::logic::Report>| -> Result<(), String> {
        for r in reports {
            if r.status != Status::Pass {
                return Err(format!("{name}: {r}"));
            }
            lines += 1;
        }
        Ok(())
    };
    check("nonstd", run_suite(&NonStandardModel, &cfg))?;
    check("std", run_suite(&StandardModel, &cfg))?;
    let pra = SuiteConfig {
        axioms: Some((1..=11).map(|i| format!("A{i}")).collect()),
        ..cfg.clone()
    };
    check("pairs", run_suite(&PairsModel, &pra))?;
    within(Duration::from_secs(60), start, format!("{lines} axiom reports PASS"))
}

fn c4_embedding() -> Outcome {
    let (std_m, ns) = (StandardModel, NonStandardModel);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100_000 {
        let (a, b): (u64, u64) = (rng.gen_range(0..=1_000_000), rng.gen_range(0..=1_000_000));
        let n: u64 = rng.gen_range(2..=1000);
        let (sa, sb) = (StdNat::new(a), StdNat::new(b));
        let (ea, eb) = (embed(&sa), embed(&sb));
        let agree = ns.add(&ea, &eb) == embed(&std_m.add(&sa, &sb))
            && ns.add(&ea, &eb) == Element::standard(a + b)
            && ns.compare(&ea, &eb) == std_m.compare(&sa, &sb)
            && ns.compare(&ea, &eb) == a.cmp(&b)
            && ns.v2(&ea) == std_m.v2(&sa).map(|v| embed(&v))
            && ns.v2(&ea) == Some(Element::standard(if a == 0 { 0u64 } else { 1u64 << a.trailing_zeros() }))
            && ns.residue_mod(&ea, n) == std_m.residue_mod(&sa, n)
            && ns.residue_mod(&ea, n) == a % n;
        if !agree {
            return Err(format!("disagreement at a={a}, b={b}, n={n}"));
        }
    }
    Ok("100000 samples agree".into())
}

fn c5_impossibility() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for a in 1..=50u64 {
        for b in 1..=50u64 {
            let g = rat(a, b);
            for n in -100..=100i64 {
                let x = PairElement::new(g.clone(), n).unwrap();
                let verdict = refute_power2_candidate(&x).map_err(|e| format!("{x}: {e}"))?;
                if !verdict.validate(&x) {
                    return Err(format!("{x}: verdict does not validate"));
                }
                let expected_shape = match &verdict {
                    Verdict::FiniteTwoDivisibility { steps, .. } => {
                        n != 0 && *steps == n.trailing_zeros() as u64
                    }
                    Verdict::DivisibleByThree { quotient } => {
                        n == 0 && quotient.n().is_zero()
                            && quotient.g().mul_int(&BigUint::from(3u32)) == g
                    }
                };
                if !expected_shape {
                    return Err(format!("{x}: unexpected verdict {verdict}"));
                }
                count += 1;
            }
        }
    }
    within(Duration::from_secs(5), start, format!("{count} candidates refuted"))
}

/// Samples from the model's own sampler mixed with explicit binary galaxies,
/// so that hypernumbers are well represented.
fn mixed_sample(rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Element {
    if rng.gen_bool(0.7) {
        return NonStandardModel.sample(rng, cfg);
    }
    let p = rng.gen_range(1..=999u64);
    let q = 1u64 << rng.gen_range(0..=10);
    let d = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-1000..=1000) };
    el(rat(p, q), d)
}

fn c6_hypernumbers() -> Outcome {
    let cfg = SamplerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut drawn, mut hyper) = (0, 0);
    while drawn < 10_000 {
        let x = mixed_sample(&mut rng, &cfg);
        // 0 is divisible by everything but V2(0) = 0 is standard.
        if x.is_zero() {
            continue;
        }
        drawn += 1;
        let divisible = (0..=64u32).all(|m| arith::divide(&x, &(BigUint::one() << m)).is_ok());
        if arith::is_hypernumber(&x) != divisible {
            return Err(format!("{x}: hypernumber={}, divisible={divisible}", arith::is_hypernumber(&x)));
        }
        if divisible {
            hyper += 1;
            for t in 1..=100u64 {
                let t = Element::standard(t);
                if arith::v2(&arith::add(&x, &t)) != arith::v2(&t) {
                    return Err(format!("v2({x} + {t}) != v2({t})"));
                }
            }
        }
    }
    Ok(format!("{drawn} samples, {hyper} hypernumbers"))
}

fn c7_galaxy_monoid() -> Outcome {
    let cfg = SamplerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let (x, y) = (mixed_sample(&mut rng, &cfg), mixed_sample(&mut rng, &cfg));
        let (gx, gy) = (x.galaxy().as_big_rational(), y.galaxy().as_big_rational());
        let sum = arith::add(&x, &y);
        if *sum.galaxy().as_big_rational() != gx + gy {
            return Err(format!("galaxy({x} + {y}) = {}", sum.galaxy()));
        }
        let delta = shift_oracle(&(gx + gy)) - shift_oracle(gx) - shift_oracle(gy);
        if !delta.is_integer() {
            return Err(format!("delta({}, {}) = {delta} is not integral", x.galaxy(), y.galaxy()));
        }
        if BigRational::from_integer(arith::delta(x.galaxy(), y.galaxy())) != delta {
            return Err(format!("delta({}, {}) disagrees with the oracle", x.galaxy(), y.galaxy()));
        }
    }
    Ok("10000 pairs".into())
}

/// `v` divides `x` in the sense of `divide` (standard `v`) or of scalar
/// multiplication by a standard factor (non-standard `v`).
fn divides(v: &Element, x: &Element) -> bool {
    if arith::is_standard(v) {
        return arith::divide(x, v.offset().magnitude()).is_ok();
    }
    let ratio = x.galaxy().as_big_rational() / v.galaxy().as_big_rational();
    ratio.is_integer()
        && arith::scalar_mul(ratio.numer().magnitude(), v) == *x
}

fn c8_maximality() -> Outcome {
    let cfg = SamplerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut drawn = 0;
    while drawn < 10_000 {
        let x = mixed_sample(&mut rng, &cfg);
        if x.is_zero() {
            continue;
        }
        drawn += 1;
        let v = arith::v2(&x);
        let twice = arith::add(&v, &v);
        if !arith::is_power_of_two(&v) || !divides(&v, &x) || divides(&twice, &x) {
            return Err(format!("v2({x}) = {v} is not maximal"));
        }
        if arith::compare(&v, &x) == Ordering::Greater || v.offset().is_negative() && arith::is_standard(&v) {
            return Err(format!("v2({x}) = {v} out of range"));
        }
    }
    Ok(format!("{drawn} samples"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("closed form for k >= 0", c1_closed_form),
        ("worked division example", c2_worked_example),
        ("axiom suite on three models", c3_axiom_suite),
        ("embedding agrees with N", c4_embedding),
        ("impossibility refutation", c5_impossibility),
        ("hypernumber characterization", c6_hypernumbers),
        ("galaxy monoid isomorphism", c7_galaxy_monoid),
        ("V2 maximality", c8_maximality),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
