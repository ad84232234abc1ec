//! Arbitrary-precision rational numbers.

use num_bigint::BigInt;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// The rational `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The rational `n`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat_int(5), rat(5, 1));
    }
}
