//! Exact rational scalars and the few conversions the crate needs.
//!
//! All exact arithmetic in the crate runs on [`Rational`]
//! (arbitrary-precision `BigRational`).  This module adds the textual
//! `"p/q"` form used by the serialization layer and a float conversion that
//! stays accurate when numerators and denominators outgrow `f64` range.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Rational from an integer, mostly for tests and literals.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced.  Panics on `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional leading sign and surrounding
/// whitespace.  Rejects empty parts, a zero denominator, and anything that
/// is not an integer ratio — in particular decimal notation, which would
/// smuggle a binary approximation into exact arithmetic.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {:?}", numer)))?;
    let denom: BigInt = match denom {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {:?}", d)))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {:?}", s)));
    }
    Ok(BigRational::new(numer, denom))
}

/// Formats a rational as `"p"` or `"p/q"` in lowest terms with the sign on
/// the numerator.  Inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed 17-significant-digit scientific rendering, the float format used
/// by every emitted JSON artifact (enough digits to round-trip any `f64`).
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Nearest-`f64` conversion that survives numerators or denominators far
/// outside `f64` range by cancelling magnitudes before dividing.
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Shift both operands so the quotient carries ~80 significant bits, then
    // divide once in integers and rescale.  Plain numer/denom conversion
    // overflows to infinity beyond 2^1024.
    let shift = 80i64 + den.bits() as i64 - num.bits() as i64;
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = scaled.to_f64().unwrap_or(f64::INFINITY);
    sign * q * (2f64).powi(-shift as i32)
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    a.lcm(b)
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = lcm(&l, v.denom());
    }
    l
}

/// Sign-aware integer square-root check: returns `s` with `s^2 = n` when `n`
/// is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let s = n.sqrt();
    if &s.clone() * &s == *n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-5/9", "100000000000000000001/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
        assert_eq!(parse_rational(" 3 / 9 ").unwrap(), ratio(1, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "1.5", "a", "1/", "/2", "1/2/3"] {
            assert!(parse_rational(s).is_err(), "accepted {:?}", s);
        }
    }

    #[test]
    fn float_conversion_matches_small_cases() {
        assert_eq!(to_f64(&ratio(1, 2)), 0.5);
        assert_eq!(to_f64(&ratio(-7, 4)), -1.75);
        assert_eq!(to_f64(&rat(0)), 0.0);
        let third = to_f64(&ratio(1, 3));
        assert!((third - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn float_conversion_survives_huge_operands() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big);
        assert_eq!(to_f64(&r), 3.0);
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(400));
        assert_eq!(to_f64(&tiny), 0.0);
    }

    #[test]
    fn denominator_lcm_over_slice() {
        let vals = [ratio(1, 4), ratio(5, 6), rat(2)];
        assert_eq!(denominator_lcm(&vals), BigInt::from(12));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(48)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
    }
}
