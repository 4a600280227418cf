//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number, the coefficient field everywhere.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `true` iff `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && r.numer().sign() != num_bigint::Sign::Minus
}
