//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by contract violations and broken structural invariants.
///
/// The `*Broken` / `InexactDivision` / `InversionMismatch` variants signal
/// violations of facts that are theorems for this machinery; seeing one of
/// them at runtime means a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{what} requires {requirement}, got {got}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        got: String,
    },

    #[error("non-unit divisor: constant term of the divisor is zero")]
    NonUnitDivisor,

    #[error("composition requires zero constant term in the inner series")]
    CompositionConstantTerm,

    #[error("exp requires zero constant term")]
    ExpConstantTerm,

    #[error("index out of range: {what} asked for {got}, table built to {built}")]
    OutOfRange {
        what: &'static str,
        got: String,
        built: String,
    },

    #[error("rational {0} is not dyadic (denominator is not a power of 2)")]
    NotDyadic(String),

    #[error("integrality broken at n = {n}: a({n}) = {value} is not an integer")]
    IntegralityBroken { n: usize, value: String },

    #[error("inexact division in {what}: {numerator} is not divisible by {divisor}")]
    InexactDivision {
        what: &'static str,
        numerator: String,
        divisor: String,
    },

    #[error("valuation bound broken at n = {n}: v_2 = {valuation} < s_2 = {digit_sum}")]
    ValuationBoundBroken {
        n: usize,
        valuation: i64,
        digit_sum: String,
    },

    #[error("Genocchi mismatch at index {n}: {left} = {left_value}, {right} = {right_value}")]
    GenocchiMismatch {
        n: usize,
        left: &'static str,
        left_value: String,
        right: &'static str,
        right_value: String,
    },
}
