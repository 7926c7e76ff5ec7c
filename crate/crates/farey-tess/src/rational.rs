//! The exact scalar everything else is built on.
//!
//! A [`Rational`] is an arbitrary-precision fraction kept in canonical
//! form: reduced, with a positive denominator. `num_rational::BigRational`
//! guarantees exactly that, so it is used directly; this module adds the
//! constructors, parsing and the canonical `num/den` rendering used by
//! every machine-readable artifact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, always reduced, denominator >= 1.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an unsigned integer.
pub fn rat_u(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical rendering: always `num/den`, reduced, denominator positive.
/// Integers render with an explicit `/1` so the format is uniform.
pub fn rat_str(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parse the canonical `num/den` form (a bare integer is also accepted).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_owned());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = den.parse().map_err(|_| bad())?;
    if denom <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Floor of a rational as a big integer (exact, works for negatives).
pub fn floor_int(value: &Rational) -> BigInt {
    value.numer().div_floor(value.denom())
}

/// Round a nonnegative rational to the nearest integer, ties to even.
pub fn round_half_even(value: &Rational) -> BigInt {
    debug_assert!(!value.is_negative());
    let (quot, rem) = value.numer().div_rem(value.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(value.denom()) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn rendering_always_carries_the_denominator() {
        assert_eq!(rat_str(&rat(1, 1)), "1/1");
        assert_eq!(rat_str(&rat(0, 5)), "0/1");
        assert_eq!(rat_str(&rat(10, 4)), "5/2");
    }

    #[test]
    fn parse_round_trips_and_rejects_junk() {
        for s in ["7/6", "-2/3", "0/1", "5/1"] {
            assert_eq!(rat_str(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(floor_int(&rat(7, 2)), BigInt::from(3));
        assert_eq!(floor_int(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(floor_int(&rat(6, 3)), BigInt::from(2));
    }

    #[test]
    fn half_even_rounding_breaks_ties_toward_even() {
        assert_eq!(round_half_even(&rat(1, 2)), BigInt::zero());
        assert_eq!(round_half_even(&rat(3, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(7, 10)), BigInt::one());
    }

    #[test]
    fn sums_scaled_by_denominators_are_integers() {
        // (a/b + c/d) * (b*d) must be an integer for exact arithmetic.
        let cases = [(3i64, 7i64, -5i64, 11i64), (1, 2, 1, 3), (22, 7, 355, 113)];
        for (a, b, c, d) in cases {
            let sum = rat(a, b) + rat(c, d);
            let scaled = sum * rat(b * d, 1);
            assert!(scaled.is_integer(), "{a}/{b} + {c}/{d} scaled not integer");
        }
    }
}
