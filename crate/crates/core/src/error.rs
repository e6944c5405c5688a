use thiserror::Error;

/// Errors raised by the exact kernel and the q-objects built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbkError {
    #[error("division by the zero ratio")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("limit at q = 1 is infinite")]
    PoleAtOne,
    #[error("expression has odd powers of q^(1/2) and q = {0} is not a rational square")]
    OddExponent(String),
    #[error("evaluation point must be positive, got q = {0}")]
    NonPositiveQ(String),
    #[error("order n = {0} is odd; only even orders are defined")]
    OddOrder(i64),
    #[error("regularized geometric sum with ratio 1 (p-exponent 0) has nonzero weight")]
    SingularRegularization,
    #[error("no closed form is available for m = {0} (supported: 2, 3, 4, 5)")]
    UnsupportedM(i64),
    #[error("negative q-integer index {0}/2")]
    NegativeIndex(i64),
    #[error("series diverges: term ratio bound {0} is not below 1")]
    DivergentParameters(String),
    #[error("series term is irrational: {0}")]
    IrrationalTerm(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, QbkError>;
