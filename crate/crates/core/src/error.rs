use thiserror::Error;

/// Errors raised by model arithmetic and literal parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("result would be negative")]
    NegativeResult,
    #[error("not divisible")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("invalid modulus {0}")]
    InvalidModulus(String),
    #[error("standard elements must have a non-negative offset")]
    NegativeStandard,
    #[error("invalid literal `{0}`")]
    InvalidLiteral(String),
    #[error("{0}")]
    Precondition(&'static str),
}
