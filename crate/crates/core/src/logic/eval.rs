use std::cmp::Ordering;

use thiserror::Error;

use super::ast::{Formula, Term};
use crate::model::Model;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("model `{0}` does not interpret V2")]
    NoV2(&'static str),
    #[error("formula has quantifiers; only quantifier-free formulas can be evaluated directly")]
    Quantified,
    #[error("modulus {0} is invalid")]
    InvalidModulus(u64),
    #[error("no candidate source for existential variable `{0}`")]
    NoWitness(String),
}

/// Variable assignment; later bindings shadow earlier ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Env<E> {
    bindings: Vec<(String, E)>,
}

impl<E> Default for Env<E> {
    fn default() -> Self {
        Env { bindings: Vec::new() }
    }
}

impl<E: Clone> Env<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, value: E) {
        self.bindings.push((name.to_string(), value));
    }

    pub fn with(&self, name: &str, value: E) -> Self {
        let mut out = self.clone();
        out.bind(name, value);
        out
    }

    pub fn get(&self, name: &str) -> Option<&E> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &E)> {
        self.bindings.iter().map(|(n, v)| (n.as_str(), v))
    }
}

impl<E: Clone> FromIterator<(String, E)> for Env<E> {
    fn from_iter<I: IntoIterator<Item = (String, E)>>(iter: I) -> Self {
        Env {
            bindings: iter.into_iter().collect(),
        }
    }
}

pub fn eval_term<M: Model>(t: &Term, env: &Env<M::Elem>, model: &M) -> Result<M::Elem, EvalError> {
    match t {
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Term::Numeral(n) => Ok(model.numeral(*n)),
        Term::Sum(a, b) => Ok(model.add(&eval_term(a, env, model)?, &eval_term(b, env, model)?)),
        Term::V2(a) => {
            let x = eval_term(a, env, model)?;
            model.v2(&x).ok_or(EvalError::NoV2(model.name()))
        }
    }
}

/// Truth value of a quantifier-free formula.
///
/// Congruence is decided by comparing residues, which agrees with the
/// existential definition `exists u. (a = n*u + b | b = n*u + a)`.
pub fn eval_qf<M: Model>(f: &Formula, env: &Env<M::Elem>, model: &M) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(a, b) => Ok(eval_term(a, env, model)? == eval_term(b, env, model)?),
        Formula::Lt(a, b) => Ok(model.compare(&eval_term(a, env, model)?, &eval_term(b, env, model)?)
            == Ordering::Less),
        Formula::CongMod(n, a, b) => {
            if *n == 0 {
                return Err(EvalError::InvalidModulus(*n));
            }
            let (x, y) = (eval_term(a, env, model)?, eval_term(b, env, model)?);
            Ok(model.residue_mod(&x, *n) == model.residue_mod(&y, *n))
        }
        Formula::Not(g) => Ok(!eval_qf(g, env, model)?),
        Formula::And(a, b) => Ok(eval_qf(a, env, model)? && eval_qf(b, env, model)?),
        Formula::Or(a, b) => Ok(eval_qf(a, env, model)? || eval_qf(b, env, model)?),
        Formula::Implies(a, b) => Ok(!eval_qf(a, env, model)? || eval_qf(b, env, model)?),
        Formula::ForAll(..) | Formula::Exists(..) => Err(EvalError::Quantified),
    }
}
