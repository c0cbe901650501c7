use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::LinalgError;

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub(crate) fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_scalar(text: &str) -> Result<Scalar, LinalgError> {
    let bad = || LinalgError::InvalidScalar(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Formats a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}
