//! Exact arithmetic substrate: arbitrary-precision integers and rationals,
//! permanents of integer matrices, and rational linear algebra.
//!
//! Everything here is exact; no floating point enters any computation whose
//! result is reported. All downstream counting and residual checks reduce to
//! operations in this module.

mod linalg;
mod permanent;

pub use linalg::{solve_linear_exact, LinearSolution, RationalMatrix};
pub use permanent::{
    permanent_naive, permanent_ryser, permanent_ryser_with_cap, PermanentError,
    DEFAULT_DIMENSION_CAP,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, Zero};
use thiserror::Error;

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Shorthand for an exact rational from machine integers (handy in tests).
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("`{0}` is not an exact rational; write an integer `p` or a fraction `p/q`")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` (integer parts, optional sign) into a reduced rational.
///
/// Decimal or exponent notation is rejected: inputs must be representable
/// exactly, and a literal like `0.1` usually is not what its author meant
/// under binary floating point.
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let text = s.trim();
    let malformed = || RationalParseError::Malformed(s.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n.trim().parse().map_err(|_| malformed())?;
            let denom: BigInt = d.trim().parse().map_err(|_| malformed())?;
            (numer, denom)
        }
        None => (text.parse().map_err(|_| malformed())?, BigInt::one()),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a rational as `p` (denominator one) or `p/q`, the same forms
/// [`parse_rational`] accepts.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}
