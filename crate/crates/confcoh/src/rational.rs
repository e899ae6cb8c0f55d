//! Exact rational scalars.
//!
//! All coefficients in this crate are arbitrary-precision rationals. The
//! representation is `num_rational::BigRational`, which maintains the
//! invariants this crate relies on: fractions are always reduced, denominators
//! are always positive, and the text form is `a/b` (or just `a` when the
//! denominator is 1).

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Builds the rational `n`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a` or `a/b` with optional sign, e.g. `-3/2`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
    }
}

/// Height of a rational: max(|numerator|, |denominator|). Used by the pivot
/// rule in exact elimination.
pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().abs())
}
