//! Scalar abstractions shared by the exact and the floating-point code paths.

use std::fmt::{Debug, Display};

use num::{BigInt, BigRational};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::error::Error;

/// A coefficient field. `BigRational` gives exact, canonical results; `f64`
/// is accepted wherever the algorithms make sense numerically.
pub trait Field:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> Field for T where
    T: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `p`, with an optional leading `+` and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<BigRational>()
        .map_err(|_| Error::Parse(s.to_string()))
}

/// Converts a scalar to `f64`, mapping unrepresentable values to NaN.
pub fn to_f64<T: ToPrimitive>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
