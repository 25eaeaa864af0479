//! An executable countable non-standard model of Büchi arithmetic with `V2`.
//!
//! * [`arith`]: elements `(r, d)` of the model and their arithmetic.
//! * [`oracle`]: the standard model `(N; +, V2)` behind the same interface.
//! * [`pairs`]: the componentwise pairs model of Presburger arithmetic and
//!   the refutation of `V_n` on it.
//! * [`logic`]: formulas, parser, evaluator and the axiom harness.

pub mod arith;
pub mod element;
pub mod error;
pub mod logic;
pub mod model;
pub mod oracle;
pub mod pairs;
pub mod rational;
pub mod residue;

pub use element::Element;
pub use error::ArithError;
pub use model::{Model, NonStandardModel, SamplerConfig};
pub use oracle::{StandardModel, StdNat};
pub use pairs::{PairElement, PairsModel, Verdict};
pub use rational::Rational;
