//! Terms and formulas of the language `{0, 1, +, =, <, ==_n, V2}`.
//!
//! The [`fmt::Display`] impls print in the concrete syntax accepted by
//! [`parse_formula`](super::parse_formula), inserting only the parentheses
//! needed to read the same tree back.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// The numeral `1 + ... + 1`.
    Numeral(u64),
    Sum(Box<Term>, Box<Term>),
    V2(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn sum(a: Term, b: Term) -> Term {
        Term::Sum(Box::new(a), Box::new(b))
    }

    pub fn v2(t: Term) -> Term {
        Term::V2(Box::new(t))
    }

    /// `t + t + ... + t` (`n >= 1` copies, left-associated).
    pub fn repeat(t: &Term, n: u64) -> Term {
        assert!(n >= 1);
        (1..n).fold(t.clone(), |acc, _| Term::sum(acc, t.clone()))
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Numeral(_) => {}
            Term::Sum(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::V2(t) => t.collect_vars(out),
        }
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Numeral(_) => self.clone(),
            Term::Sum(a, b) => Term::sum(a.rename(from, to), b.rename(from, to)),
            Term::V2(t) => Term::v2(t.rename(from, to)),
        }
    }

    pub fn uses_v2(&self) -> bool {
        match self {
            Term::Var(_) | Term::Numeral(_) => false,
            Term::Sum(a, b) => a.uses_v2() || b.uses_v2(),
            Term::V2(_) => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    /// `a == b mod n`, `n >= 2`.
    CongMod(u64, Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::ForAll(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Lt(..) | Formula::CongMod(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::ForAll(..) | Formula::Exists(..) => false,
        }
    }

    pub fn uses_v2(&self) -> bool {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::CongMod(_, a, b) => {
                a.uses_v2() || b.uses_v2()
            }
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => f.uses_v2(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.uses_v2() || b.uses_v2()
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut terms = BTreeSet::new();
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::CongMod(_, a, b) => {
                a.collect_vars(&mut terms);
                b.collect_vars(&mut terms);
                out.extend(terms.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::CongMod(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.all_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                out.insert(v.clone());
                f.all_names(out);
            }
        }
    }

    /// Replaces free occurrences of `from` by `to`. `to` must be fresh.
    fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Lt(a, b) => Formula::Lt(a.rename(from, to), b.rename(from, to)),
            Formula::CongMod(n, a, b) => {
                Formula::CongMod(*n, a.rename(from, to), b.rename(from, to))
            }
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::ForAll(v, _) | Formula::Exists(v, _) if v == from => self.clone(),
            Formula::ForAll(v, f) => Formula::forall(v, f.rename_free(from, to)),
            Formula::Exists(v, f) => Formula::exists(v, f.rename_free(from, to)),
        }
    }

    /// Renames binders so that no bound variable shadows a free variable or
    /// an enclosing binder. Idempotent.
    pub fn rename_apart(&self) -> Formula {
        let mut used = BTreeSet::new();
        self.all_names(&mut used);
        let mut scope: Vec<String> = self.free_vars().into_iter().collect();
        self.rename_apart_in(&mut scope, &mut used)
    }

    fn rename_apart_in(&self, scope: &mut Vec<String>, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Lt(..) | Formula::CongMod(..) => self.clone(),
            Formula::Not(f) => Formula::not(f.rename_apart_in(scope, used)),
            Formula::And(a, b) => {
                Formula::and(a.rename_apart_in(scope, used), b.rename_apart_in(scope, used))
            }
            Formula::Or(a, b) => {
                Formula::or(a.rename_apart_in(scope, used), b.rename_apart_in(scope, used))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_apart_in(scope, used), b.rename_apart_in(scope, used))
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                let (name, body) = if scope.contains(v) {
                    let fresh = (1..)
                        .map(|i| format!("{v}_{i}"))
                        .find(|n| !used.contains(n))
                        .expect("infinitely many names");
                    used.insert(fresh.clone());
                    let body = f.rename_free(v, &fresh);
                    (fresh, body)
                } else {
                    (v.clone(), (**f).clone())
                };
                scope.push(name.clone());
                let body = body.rename_apart_in(scope, used);
                scope.pop();
                if matches!(self, Formula::ForAll(..)) {
                    Formula::forall(&name, body)
                } else {
                    Formula::exists(&name, body)
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Numeral(n) => write!(f, "{n}"),
            Term::Sum(a, b) => {
                write!(f, "{a} + ")?;
                if matches!(**b, Term::Sum(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Term::V2(t) => write!(f, "V2({t})"),
        }
    }
}

// Binding strength, loosest first. Quantifier bodies extend as far right as
// possible, so a quantifier only prints bare when nothing follows it.
const QUANT: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;

fn write_binary(
    out: &mut fmt::Formatter<'_>,
    op: &str,
    prec: u8,
    right_assoc: bool,
    (a, b): (&Formula, &Formula),
    at_end: bool,
) -> fmt::Result {
    let (lp, rp) = if right_assoc { (prec + 1, prec) } else { (prec, prec + 1) };
    write_formula(out, a, lp, false)?;
    write!(out, " {op} ")?;
    write_formula(out, b, rp, at_end)
}

fn write_formula(
    out: &mut fmt::Formatter<'_>,
    f: &Formula,
    min_prec: u8,
    at_end: bool,
) -> fmt::Result {
    let (prec, ends_open) = match f {
        Formula::ForAll(..) | Formula::Exists(..) => (QUANT, true),
        Formula::Implies(..) => (IMPLIES, false),
        Formula::Or(..) => (OR, false),
        Formula::And(..) => (AND, false),
        _ => (NOT, false),
    };
    let wrap = if ends_open { !at_end } else { prec < min_prec };
    if wrap {
        out.write_str("(")?;
    }
    let at_end = at_end || wrap;
    match f {
        Formula::Eq(a, b) => write!(out, "{a} = {b}")?,
        Formula::Lt(a, b) => write!(out, "{a} < {b}")?,
        Formula::CongMod(n, a, b) => write!(out, "{a} == {b} mod {n}")?,
        Formula::Not(g) => {
            out.write_str("~")?;
            write_formula(out, g, NOT, at_end)?;
        }
        Formula::And(a, b) => write_binary(out, "&", AND, false, (a, b), at_end)?,
        Formula::Or(a, b) => write_binary(out, "|", OR, false, (a, b), at_end)?,
        Formula::Implies(a, b) => write_binary(out, "->", IMPLIES, true, (a, b), at_end)?,
        Formula::ForAll(v, g) => {
            write!(out, "forall {v}. ")?;
            write_formula(out, g, QUANT, true)?;
        }
        Formula::Exists(v, g) => {
            write!(out, "exists {v}. ")?;
            write_formula(out, g, QUANT, true)?;
        }
    }
    if wrap {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, QUANT, true)
    }
}
