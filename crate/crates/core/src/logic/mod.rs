//! First-order formulas over `{0, 1, +, =, <, ==_n, V2}` and the axiom
//! harness.

pub mod ast;
pub mod axioms;
pub mod eval;
pub mod harness;
pub mod parser;

pub use ast::{Formula, Term};
pub use axioms::{catalog, AxiomSpec, Source, Strategy, Witness};
pub use eval::{eval_qf, eval_term, Env, EvalError};
pub use harness::{check_axiom, recheck, run_suite, Counterexample, Report, Status, SuiteConfig};
pub use parser::{parse_formula, parse_term, ParseError};
