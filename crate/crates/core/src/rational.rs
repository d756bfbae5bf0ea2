//! Exact rational scalars.
//!
//! Every computation in this crate happens over the rationals with
//! arbitrary-precision integers — there is no floating point anywhere, so
//! solution-space dimensions and basis matrices are exact, not approximate.
//! The backing type is [`num::BigRational`], which already maintains the
//! invariants we rely on: the denominator is positive, numerator and
//! denominator are coprime, and zero is `0/1`.
//!
//! This module adds the small amount of plumbing the rest of the crate
//! needs: literal parsing with precise errors (used by the catalog reader)
//! and a few construction helpers.

use num::bigint::BigInt;
use num::BigRational;
use thiserror::Error;

/// Exact rational scalar; alias so call sites stay short.
pub type Rational = BigRational;

/// `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Error produced by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not an integer")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` with optional leading sign on either part.
///
/// The result is normalized (reduced, positive denominator), so `"3/6"`
/// parses to the same value as `"1/2"` and `"1/-2"` to `"-1/2"`.  A zero
/// denominator is rejected rather than panicking, which is what makes this
/// worth having over the stock `FromStr`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        t.parse()
            .map_err(|_| ParseRationalError::InvalidInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Formats a rational as `p` (integral) or `p/q` (reduced, `q > 0`).
///
/// This is exactly the `Display` of the backing type; the helper exists so
/// report code documents its formatting contract in one place.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert!(matches!(
            parse_rational("x"),
            Err(ParseRationalError::InvalidInteger(_))
        ));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rational("1.5"),
            Err(ParseRationalError::InvalidInteger(_))
        ));
    }

    #[test]
    fn formats_reduced_with_positive_denominator() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(1, -2)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0");
    }
}
