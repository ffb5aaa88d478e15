//! Exact rationals backed by arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if value.denom().is_one() {
        value.numer().to_i64()
    } else {
        None
    }
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}
