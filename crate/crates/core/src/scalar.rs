//! Exact coefficient arithmetic: rationals, the `Q * pi^{k/2} * L^q` value
//! field, Gamma evaluation at half-integers, classical sphere monomial
//! integrals, and the radial coefficient ring `Q[x^1..x^m, r^e, log r]`
//! with its canonical form modulo `r^2 = (x^1)^2 + ... + (x^m)^2`.

mod exact;
mod fraction;
mod radial;
mod rational;

pub use exact::{gamma_half, rgamma_half, sphere_monomial_integral, ExactValue, PiLPoly};
pub use fraction::RadialFrac;
pub use radial::{RadialCoeff, RadialKey};
pub use rational::{
    as_i64 as as_i64_rational, binom, factorial, parse_rational, rat, ratio, rational_pow,
    rational_sqrt, Rational,
};

use thiserror::Error;

/// Errors raised by the exact scalar layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("gamma function requires a positive half-integer argument, got {0}/2")]
    NonPositiveGamma(i64),
    #[error("coordinate axis {axis} out of range 1..={m}")]
    AxisOutOfRange { axis: usize, m: usize },
    #[error("cannot add exact values with different pi/L powers: {0} vs {1}")]
    IncompatibleAddition(String, String),
    #[error("value is not a single pi/L monomial: {0}")]
    MixedValue(String),
    #[error("division by zero exact value")]
    DivisionByZero,
    #[error("{base} has no exact rational power {exp}")]
    NotExactPower { base: String, exp: String },
    #[error("radial integration produces a logarithm from the term {0}")]
    LogarithmicIntegral(String),
    #[error("cannot evaluate {0} at the origin")]
    EvalSingular(String),
}
