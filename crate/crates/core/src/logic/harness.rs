//! Checking axioms against a model by sampling and witnessing.
//!
//! Quantifiers over an infinite model cannot be decided, so each axiom is
//! evaluated by candidate instantiation: the leading universals are drawn
//! `cases` times, and every inner quantifier ranges over the candidates
//! produced by its [`Source`]. A failing case is reported with the assignment
//! of the leading universals; inner draws are seeded from that assignment so
//! the counterexample re-evaluates the same way.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::Formula;
use super::axioms::{catalog, AxiomSpec, Source, Witness};
use super::eval::{eval_qf, EvalError, Env};
use crate::model::{Model, SamplerConfig};

/// Random draws per inner sampled quantifier.
const INNER_SAMPLES: usize = 8;
/// Extra random draws mixed into a universally used witness.
const WITNESS_PADDING: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub sampler: SamplerConfig,
    pub schema_max: u64,
    /// Restrict the run to these axiom ids.
    pub axioms: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: 1000,
            sampler: SamplerConfig::default(),
            schema_max: 12,
            axioms: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// Values of the leading universals in a failing case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub param: Option<u64>,
    pub assignment: Vec<(String, String)>,
    /// Set when evaluation itself failed rather than returning false.
    pub error: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.param {
            parts.push(format!("n={n}"));
        }
        parts.extend(self.assignment.iter().map(|(v, e)| format!("{v}={e}")));
        if let Some(e) = &self.error {
            parts.push(format!("error={e}"));
        }
        f.write_str(&parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub status: Status,
    pub cases: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for Report {
    /// One TSV line: `id, status, cases, seed, counterexample`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}\t", self.id, self.status, self.cases, self.seed)?;
        if let Some(c) = &self.counterexample {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// FNV-1a; stable across platforms and toolchains, unlike `DefaultHasher`.
fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn param_tag(param: Option<u64>) -> String {
    param.map_or_else(|| "-".to_string(), |n| n.to_string())
}

/// Splits `forall v1. ... forall vk. matrix` at the first binder that is not
/// sampled.
fn leading_universals<'f>(spec: &AxiomSpec, f: &'f Formula) -> (Vec<(String, Source)>, &'f Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::ForAll(v, body) = cur {
        match spec.source(v) {
            Some(s) if s.is_sampled() => vars.push((v.clone(), s.clone())),
            _ => break,
        }
        cur = body;
    }
    (vars, cur)
}

struct Checker<'a, M: Model> {
    model: &'a M,
    spec: &'a AxiomSpec,
    cfg: &'a SuiteConfig,
    param: Option<u64>,
    corners: Vec<M::Elem>,
}

impl<'a, M: Model> Checker<'a, M> {
    fn new(model: &'a M, spec: &'a AxiomSpec, cfg: &'a SuiteConfig, param: Option<u64>) -> Self {
        Checker {
            model,
            spec,
            cfg,
            param,
            corners: model.corner_cases(),
        }
    }

    fn lookup(&self, env: &Env<M::Elem>, var: &str) -> Result<M::Elem, EvalError> {
        env.get(var)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(var.to_string()))
    }

    fn random<R: Rng>(&self, rng: &mut R) -> M::Elem {
        if !self.corners.is_empty() && rng.gen_bool(0.15) {
            self.corners[rng.gen_range(0..self.corners.len())].clone()
        } else {
            self.model.sample(rng, &self.cfg.sampler)
        }
    }

    fn draw_outer<R: Rng>(
        &self,
        source: &Source,
        index: usize,
        position: usize,
        env: &Env<M::Elem>,
        rng: &mut R,
    ) -> Result<M::Elem, EvalError> {
        if index < self.corners.len() {
            return Ok(self.corners[(index + 5 * position) % self.corners.len()].clone());
        }
        Ok(match source {
            Source::SamplePowerOfTwo if rng.gen_bool(0.5) => self
                .model
                .sample_power_of_two(rng, &self.cfg.sampler)
                .unwrap_or_else(|| self.random(rng)),
            Source::SampleNear(other) if rng.gen_bool(0.5) => self.lookup(env, other)?,
            _ => self.random(rng),
        })
    }

    fn witness_candidates(
        &self,
        w: &Witness,
        env: &Env<M::Elem>,
    ) -> Result<Vec<M::Elem>, EvalError> {
        let m = self.model;
        let n = self.param.unwrap_or(2);
        Ok(match w {
            Witness::Difference { minuend, subtrahend } => m
                .sub(&self.lookup(env, minuend)?, &self.lookup(env, subtrahend)?)
                .into_iter()
                .collect(),
            Witness::Predecessor(x) => m
                .sub(&self.lookup(env, x)?, &m.numeral(1))
                .into_iter()
                .collect(),
            Witness::LeastPositive => vec![m.numeral(1)],
            Witness::QuotientOfDifference { a, b } => {
                let (a, b) = (self.lookup(env, a)?, self.lookup(env, b)?);
                [m.sub(&a, &b), m.sub(&b, &a)]
                    .into_iter()
                    .flatten()
                    .filter_map(|d| m.divide(&d, n))
                    .collect()
            }
            Witness::Half(x) => m.divide(&self.lookup(env, x)?, 2).into_iter().collect(),
            Witness::Quotient(x) => m.divide(&self.lookup(env, x)?, n).into_iter().collect(),
            Witness::NextPowerOfTwo(x) => m
                .next_power_of_two_above(&self.lookup(env, x)?)
                .into_iter()
                .collect(),
        })
    }

    fn candidates<R: Rng>(
        &self,
        var: &str,
        universal: bool,
        env: &Env<M::Elem>,
        rng: &mut R,
    ) -> Result<Vec<M::Elem>, EvalError> {
        let source = match self.spec.source(var) {
            Some(s) => s,
            None if universal => &Source::Sample,
            None => return Err(EvalError::NoWitness(var.to_string())),
        };
        let mut out = Vec::new();
        match source {
            Source::Sample | Source::SamplePowerOfTwo | Source::SampleNear(_) => {
                out.extend(self.corners.iter().cloned());
                out.extend((0..INNER_SAMPLES).map(|_| self.random(rng)));
            }
            Source::Between(x) => {
                let lo = self.lookup(env, x)?;
                let hi = self.model.add(&lo, &lo);
                let one = self.model.numeral(1);
                let next = self.model.add(&lo, &one);
                let inside = |e: &M::Elem| {
                    self.model.compare(&lo, e).is_lt() && self.model.compare(e, &hi).is_lt()
                };
                if inside(&next) {
                    out.push(next);
                }
                if let Some(prev) = self.model.sub(&hi, &one).filter(|e| inside(e)) {
                    out.push(prev);
                }
                out.extend(
                    (0..INNER_SAMPLES)
                        .filter_map(|_| self.model.sample_between(&lo, &hi, rng, &self.cfg.sampler)),
                );
            }
            Source::Witness(w) => {
                out = self.witness_candidates(w, env)?;
                if universal {
                    out.extend((0..WITNESS_PADDING).map(|_| self.random(rng)));
                }
            }
        }
        Ok(out)
    }

    fn eval<R: Rng>(&self, f: &Formula, env: &Env<M::Elem>, rng: &mut R) -> Result<bool, EvalError> {
        if f.is_quantifier_free() {
            return eval_qf(f, env, self.model);
        }
        match f {
            Formula::Not(g) => Ok(!self.eval(g, env, rng)?),
            Formula::And(a, b) => Ok(self.eval(a, env, rng)? && self.eval(b, env, rng)?),
            Formula::Or(a, b) => Ok(self.eval(a, env, rng)? || self.eval(b, env, rng)?),
            Formula::Implies(a, b) => Ok(!self.eval(a, env, rng)? || self.eval(b, env, rng)?),
            Formula::ForAll(v, body) => {
                for c in self.candidates(v, true, env, rng)? {
                    if !self.eval(body, &env.with(v, c), rng)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Exists(v, body) => {
                for c in self.candidates(v, false, env, rng)? {
                    if self.eval(body, &env.with(v, c), rng)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Eq(..) | Formula::Lt(..) | Formula::CongMod(..) => unreachable!(),
        }
    }

    fn assignment(&self, env: &Env<M::Elem>) -> Vec<(String, String)> {
        env.iter().map(|(v, e)| (v.to_string(), e.to_string())).collect()
    }

    /// Evaluates the matrix under the leading assignment with inner draws
    /// seeded from that assignment.
    fn eval_case(&self, matrix: &Formula, env: &Env<M::Elem>) -> Result<bool, EvalError> {
        let key = format!(
            "{}/{}/{}/{}",
            self.cfg.seed,
            self.spec.id,
            param_tag(self.param),
            Counterexample { param: None, assignment: self.assignment(env), error: None }
        );
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(&key));
        self.eval(matrix, env, &mut rng)
    }

    /// Runs `cases` cases; returns the first failure.
    fn run(&self, formula: &Formula) -> Option<Counterexample> {
        let (outer, matrix) = leading_universals(self.spec, formula);
        for index in 0..self.cfg.cases {
            let key = format!("{}/{}/{}/{index}", self.cfg.seed, self.spec.id, param_tag(self.param));
            let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(&key));
            let mut env = Env::new();
            let mut error = None;
            for (position, (var, source)) in outer.iter().enumerate() {
                match self.draw_outer(source, index, position, &env, &mut rng) {
                    Ok(value) => env.bind(var, value),
                    Err(e) => {
                        error = Some(e);
                        break;
                    }
                }
            }
            let verdict = match error {
                Some(e) => Err(e),
                None => self.eval_case(matrix, &env),
            };
            match verdict {
                Ok(true) => {}
                Ok(false) => {
                    return Some(Counterexample {
                        param: self.param,
                        assignment: self.assignment(&env),
                        error: None,
                    })
                }
                Err(e) => {
                    return Some(Counterexample {
                        param: self.param,
                        assignment: self.assignment(&env),
                        error: Some(e.to_string()),
                    })
                }
            }
        }
        None
    }
}

/// Checks one axiom (every schema instance) against `model`.
pub fn check_axiom<M: Model>(spec: &AxiomSpec, model: &M, cfg: &SuiteConfig) -> Report {
    let mut report = Report {
        id: spec.id.to_string(),
        status: Status::Pass,
        cases: 0,
        seed: cfg.seed,
        counterexample: None,
    };
    if spec.uses_v2() && !model.has_v2() {
        report.status = Status::Skipped;
        return report;
    }
    for (param, formula) in spec.instances() {
        let checker = Checker::new(model, spec, cfg, param);
        if let Some(cex) = checker.run(&formula) {
            report.status = Status::Fail;
            report.counterexample = Some(cex);
            return report;
        }
        report.cases += cfg.cases;
    }
    report
}

/// Re-evaluates a reported counterexample. `Ok(false)` confirms it.
pub fn recheck<M: Model>(
    spec: &AxiomSpec,
    model: &M,
    cfg: &SuiteConfig,
    cex: &Counterexample,
) -> Result<bool, EvalError> {
    let (_, formula) = spec
        .instances()
        .into_iter()
        .find(|(p, _)| *p == cex.param)
        .ok_or(EvalError::InvalidModulus(cex.param.unwrap_or(0)))?;
    let (_, matrix) = leading_universals(spec, &formula);
    let mut env = Env::new();
    for (var, literal) in &cex.assignment {
        let value = model
            .parse_elem(literal)
            .map_err(|_| EvalError::UnboundVariable(var.clone()))?;
        env.bind(var, value);
    }
    Checker::new(model, spec, cfg, cex.param).eval_case(matrix, &env)
}

/// Runs the catalog (filtered by `cfg.axioms`) in catalog order.
pub fn run_suite<M: Model>(model: &M, cfg: &SuiteConfig) -> Vec<Report> {
    catalog(cfg.schema_max)
        .iter()
        .filter(|spec| {
            cfg.axioms
                .as_ref()
                .is_none_or(|ids| ids.iter().any(|id| id.eq_ignore_ascii_case(spec.id)))
        })
        .map(|spec| check_axiom(spec, model, cfg))
        .collect()
}
