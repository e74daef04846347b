//! Exact arithmetic: rationals, univariate polynomials over the rationals and
//! truncated Puiseux series in `q` with exponents in `(1/R)Z`.

mod json;
mod pochhammer;
mod qpoly;
mod series;

pub use num_rational::{BigRational, Rational64};
pub use pochhammer::{pochhammer_product, PochhammerFactor};
pub use qpoly::QPoly;
pub use series::PuiseuxSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has no invertible leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("coefficient of q^{exponent} requested but the series is only known below q^{order}")]
    OrderExceeded { exponent: Rational64, order: Rational64 },
    #[error("invalid series: {0}")]
    Invalid(String),
}

/// Shorthand for an exact rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Shorthand for an exact integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
