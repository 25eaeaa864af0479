//! The axioms checked against every model: Presburger arithmetic (A1–A11),
//! the recursive characterisation of `V2` (V12–V14) and the power-of-two
//! conditions (A15–A17).
//!
//! Each axiom comes with a source of candidate values for every quantified
//! variable. Leading universals are sampled; inner existentials are answered
//! by constructive witness functions whose output is then checked like any
//! other value.

use std::fmt;

use super::ast::{Formula, Term};
use super::parser::parse_formula;

/// Constructive witnesses for existential variables, computed from the
/// values already bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `minuend - subtrahend`.
    Difference {
        minuend: &'static str,
        subtrahend: &'static str,
    },
    /// `x - 1`.
    Predecessor(&'static str),
    /// The numeral `1`, the least positive element.
    LeastPositive,
    /// `(a - b) / n` and `(b - a) / n` for the schema parameter `n`.
    QuotientOfDifference { a: &'static str, b: &'static str },
    /// `x / 2`.
    Half(&'static str),
    /// `x / n` for the schema parameter `n`.
    Quotient(&'static str),
    /// A power of two above `x`.
    NextPowerOfTwo(&'static str),
}

impl Witness {
    /// Name of the model operation backing the witness.
    pub fn function_id(&self) -> &'static str {
        match self {
            Witness::Difference { .. } | Witness::Predecessor(_) => "sub",
            Witness::LeastPositive => "one",
            Witness::QuotientOfDifference { .. } | Witness::Half(_) | Witness::Quotient(_) => {
                "divide"
            }
            Witness::NextPowerOfTwo(_) => "next_power_of_two_above",
        }
    }
}

/// Where the values for one bound variable come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Random elements and corner cases.
    Sample,
    /// Like `Sample`, but half of the draws are powers of two.
    SamplePowerOfTwo,
    /// Like `Sample`, but half of the draws copy the named variable.
    SampleNear(&'static str),
    /// Elements strictly between `x` and `x + x`.
    Between(&'static str),
    Witness(Witness),
}

impl Source {
    pub fn is_sampled(&self) -> bool {
        matches!(self, Source::Sample | Source::SamplePowerOfTwo | Source::SampleNear(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    UniversalSampled,
    ExistentialWitnessed(&'static str),
    Schema(Vec<u64>),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::UniversalSampled => f.write_str("UNIVERSAL_SAMPLED"),
            Strategy::ExistentialWitnessed(w) => write!(f, "EXISTENTIAL_WITNESSED({w})"),
            Strategy::Schema(params) => {
                let (lo, hi) = (params.first(), params.last());
                match (lo, hi) {
                    (Some(lo), Some(hi)) => write!(f, "SCHEMA({lo}..={hi})"),
                    _ => f.write_str("SCHEMA()"),
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Body {
    Fixed(&'static str),
    Param(fn(u64) -> String),
}

#[derive(Debug, Clone)]
pub struct AxiomSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub strategy: Strategy,
    body: Body,
    sources: Vec<(&'static str, Source)>,
}

impl AxiomSpec {
    /// `(parameter, formula)` for every instance; one instance with no
    /// parameter for plain axioms.
    pub fn instances(&self) -> Vec<(Option<u64>, Formula)> {
        let parse = |text: String| {
            parse_formula(&text).unwrap_or_else(|e| panic!("axiom {} does not parse: {e}", self.id))
        };
        match (&self.body, &self.strategy) {
            (Body::Param(f), Strategy::Schema(params)) => {
                params.iter().map(|&n| (Some(n), parse(f(n)))).collect()
            }
            (Body::Fixed(text), _) => vec![(None, parse(text.to_string()))],
            (Body::Param(_), _) => unreachable!("parametric axiom without schema range"),
        }
    }

    pub fn source(&self, var: &str) -> Option<&Source> {
        self.sources.iter().find(|(v, _)| *v == var).map(|(_, s)| s)
    }

    pub fn uses_v2(&self) -> bool {
        self.instances().iter().any(|(_, f)| f.uses_v2())
    }

    /// True for A1–A11, the Presburger part.
    pub fn is_presburger(&self) -> bool {
        self.id.starts_with('A') && self.id[1..].parse::<u32>().is_ok_and(|n| n <= 11)
    }
}

fn n_copies(var: &str, n: u64) -> String {
    Term::repeat(&Term::var(var), n).to_string()
}

fn axiom4(n: u64) -> String {
    let nu = n_copies("u", n);
    format!(
        "forall x. forall y. (x == y mod {n} -> exists u. (x = {nu} + y | y = {nu} + x)) \
         & ((exists u. (x = {nu} + y | y = {nu} + x)) -> x == y mod {n})"
    )
}

fn axiom11(n: u64) -> String {
    let cases: Vec<String> = (0..n).map(|j| format!("x == {j} mod {n}")).collect();
    format!("forall x. {}", cases.join(" | "))
}

fn axiom17(n: u64) -> String {
    // V2(0) = 0, so "x is a power of two" needs x != 0 spelled out.
    format!(
        "forall x. V2(x) = x & ~(x = 0) -> ~(exists y. {} = x)",
        n_copies("y", n)
    )
}

/// The full catalog. Schemata range over `2..=schema_max` (A4, A11) and odd
/// `3..=schema_max` (A17).
pub fn catalog(schema_max: u64) -> Vec<AxiomSpec> {
    use Source::*;
    let up_to = |lo: u64| (lo..=schema_max.max(lo)).collect::<Vec<_>>();
    let odd = (3..=schema_max.max(3)).filter(|n| n % 2 == 1).collect::<Vec<_>>();
    let fixed = |id, description, strategy, text, sources| AxiomSpec {
        id,
        description,
        strategy,
        body: Body::Fixed(text),
        sources,
    };
    vec![
        fixed(
            "A1",
            "zero is the additive identity",
            Strategy::UniversalSampled,
            "forall x. (x = 0 -> forall y. x + y = y) & ((forall y. x + y = y) -> x = 0)",
            vec![("x", Sample), ("y", Sample)],
        ),
        fixed(
            "A2",
            "order is defined by addition",
            Strategy::ExistentialWitnessed("sub"),
            "forall x. forall y. (x < y -> exists z. (x + z = y & ~(z = 0))) \
             & ((exists z. (x + z = y & ~(z = 0))) -> x < y)",
            vec![
                ("x", Sample),
                ("y", Sample),
                ("z", Witness(self::Witness::Difference { minuend: "y", subtrahend: "x" })),
            ],
        ),
        fixed(
            "A3",
            "one is the least positive element",
            Strategy::ExistentialWitnessed("one"),
            "forall x. (x = 1 -> 0 < x & ~(exists z. (0 < z & z < x))) \
             & (0 < x & ~(exists z. (0 < z & z < x)) -> x = 1)",
            vec![("x", Sample), ("z", Witness(self::Witness::LeastPositive))],
        ),
        AxiomSpec {
            id: "A4",
            description: "congruence is divisibility of the difference",
            strategy: Strategy::Schema(up_to(2)),
            body: Body::Param(axiom4),
            sources: vec![
                ("x", Sample),
                ("y", Sample),
                ("u", Witness(self::Witness::QuotientOfDifference { a: "x", b: "y" })),
            ],
        },
        fixed(
            "A5",
            "successor is never zero",
            Strategy::UniversalSampled,
            "forall x. ~(x + 1 = 0)",
            vec![("x", Sample)],
        ),
        fixed(
            "A6",
            "cancellation",
            Strategy::UniversalSampled,
            "forall x. forall y. forall z. (x + z = y + z -> x = y)",
            vec![("x", Sample), ("y", SampleNear("x")), ("z", Sample)],
        ),
        fixed(
            "A7",
            "associativity",
            Strategy::UniversalSampled,
            "forall x. forall y. forall z. (x + y) + z = x + (y + z)",
            vec![("x", Sample), ("y", Sample), ("z", Sample)],
        ),
        fixed(
            "A8",
            "every nonzero element is a successor",
            Strategy::ExistentialWitnessed("sub"),
            "forall x. x = 0 | exists y. x = y + 1",
            vec![("x", Sample), ("y", Witness(self::Witness::Predecessor("x")))],
        ),
        fixed(
            "A9",
            "commutativity",
            Strategy::UniversalSampled,
            "forall x. forall y. x + y = y + x",
            vec![("x", Sample), ("y", Sample)],
        ),
        fixed(
            "A10",
            "trichotomy",
            Strategy::UniversalSampled,
            "forall x. forall y. x < y | x = y | y < x",
            vec![("x", Sample), ("y", SampleNear("x"))],
        ),
        AxiomSpec {
            id: "A11",
            description: "every element has a residue",
            strategy: Strategy::Schema(up_to(2)),
            body: Body::Param(axiom11),
            sources: vec![("x", Sample)],
        },
        fixed(
            "V12",
            "V2(x) = 0 exactly at zero",
            Strategy::UniversalSampled,
            "forall x. (V2(x) = 0 -> x = 0) & (x = 0 -> V2(x) = 0)",
            vec![("x", Sample)],
        ),
        fixed(
            "V13",
            "V2 of an odd element is 1",
            Strategy::ExistentialWitnessed("divide"),
            "forall x. ~(exists t. t + t = x) -> V2(x) = 1",
            vec![("x", Sample), ("t", Witness(self::Witness::Half("x")))],
        ),
        fixed(
            "V14",
            "V2 doubles with its argument",
            Strategy::ExistentialWitnessed("divide"),
            "forall x. forall t. (t + t = x -> V2(x) = V2(t) + V2(t))",
            vec![("x", Sample), ("t", Witness(self::Witness::Half("x")))],
        ),
        fixed(
            "A15",
            "powers of two are unbounded",
            Strategy::ExistentialWitnessed("next_power_of_two_above"),
            "forall x. exists y. (y > x & V2(y) = y)",
            vec![("x", Sample), ("y", Witness(self::Witness::NextPowerOfTwo("x")))],
        ),
        fixed(
            "A16",
            "no power of two between a power of two and its double",
            Strategy::UniversalSampled,
            "forall x. V2(x) = x -> (forall y. (x < y & y < x + x -> V2(y) < y))",
            vec![("x", SamplePowerOfTwo), ("y", Between("x"))],
        ),
        AxiomSpec {
            id: "A17",
            description: "no power of two is divisible by an odd number",
            strategy: Strategy::Schema(odd),
            body: Body::Param(axiom17),
            sources: vec![("x", SamplePowerOfTwo), ("y", Witness(self::Witness::Quotient("x")))],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn bound_vars(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Eq(..) | Formula::Lt(..) | Formula::CongMod(..) => {}
            Formula::Not(g) => bound_vars(g, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                bound_vars(a, out);
                bound_vars(b, out);
            }
            Formula::ForAll(v, g) | Formula::Exists(v, g) => {
                out.insert(v.clone());
                bound_vars(g, out);
            }
        }
    }

    #[test]
    fn catalog_has_each_axiom_once() {
        let ids: Vec<&str> = catalog(12).iter().map(|a| a.id).collect();
        assert_eq!(
            ids,
            [
                "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11", "V12", "V13",
                "V14", "A15", "A16", "A17"
            ]
        );
    }

    #[test]
    fn every_instance_parses_closed_with_sources_for_all_binders() {
        for spec in catalog(12) {
            for (param, f) in spec.instances() {
                assert!(f.free_vars().is_empty(), "{} {param:?} has free vars", spec.id);
                let mut vars = BTreeSet::new();
                bound_vars(&f, &mut vars);
                for v in vars {
                    assert!(spec.source(&v).is_some(), "{}: no source for {v}", spec.id);
                }
            }
        }
    }

    #[test]
    fn schema_ranges() {
        let cat = catalog(12);
        let get = |id| cat.iter().find(|a| a.id == id).unwrap().strategy.clone();
        assert_eq!(get("A11"), Strategy::Schema((2..=12).collect()));
        assert_eq!(get("A17"), Strategy::Schema(vec![3, 5, 7, 9, 11]));
        assert_eq!(get("A17").to_string(), "SCHEMA(3..=11)");
    }

    #[test]
    fn instance_texts() {
        let cat = catalog(3);
        let a17 = cat.iter().find(|a| a.id == "A17").unwrap();
        assert_eq!(
            a17.instances()[0].1.to_string(),
            "forall x. V2(x) = x & ~x = 0 -> ~exists y. y + y + y = x"
        );
        let a11 = cat.iter().find(|a| a.id == "A11").unwrap();
        assert_eq!(
            a11.instances()[0].1.to_string(),
            "forall x. x == 0 mod 2 | x == 1 mod 2"
        );
    }

    #[test]
    fn v2_usage_split() {
        for spec in catalog(12) {
            assert_eq!(spec.uses_v2(), !spec.is_presburger(), "{}", spec.id);
        }
    }
}
