//! Arbitrary-precision rational scalars and their canonical text form.
//!
//! All scalar values in this crate are `Rat` (a ratio of big integers, kept
//! in lowest terms with the sign on the numerator). The canonical text form
//! is `"p/q"`, shortened to `"p"` when the denominator is one; that is the
//! form used in JSON fixtures and reports.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Error raised when a string is not a valid rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatParseError {
    text: String,
    reason: String,
}

impl fmt::Display for RatParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}: {}", self.text, self.reason)
    }
}

impl std::error::Error for RatParseError {}

fn parse_error(text: &str, reason: &str) -> RatParseError {
    RatParseError {
        text: text.to_string(),
        reason: reason.to_string(),
    }
}

/// Build a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero; use [`parse_rat`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a rational literal of the form `p` or `p/q` (lowest terms are not
/// required on input; the result is always reduced).
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(parse_error(text, "empty string"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| parse_error(text, "numerator is not an integer"))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| parse_error(text, "denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(parse_error(text, "zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` when q = 1.
pub fn format_rat(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the value is an integer.
pub fn is_integer(value: &Rat) -> bool {
    value.denom().is_one()
}

/// True when the value is strictly positive.
pub fn is_positive(value: &Rat) -> bool {
    value.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rat(" -9/6 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("4/2").unwrap(), rat_int(2));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(8, 2)), "4");
        assert_eq!(format_rat(&rat_int(0)), "0");
    }

    #[test]
    fn round_trips_canonical_form() {
        for (n, d) in [(1i64, 2i64), (-3, 7), (22, 11), (0, 5), (-1, 1)] {
            let v = rat(n, d);
            assert_eq!(parse_rat(&format_rat(&v)).unwrap(), v);
        }
    }
}
