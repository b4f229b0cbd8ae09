use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

/// Exact scalar used throughout: an arbitrary-precision rational in lowest
/// terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`. Anything else, including decimals and surds,
/// is rejected: the engine only handles rational eigenvalues.
pub fn parse_rational(text: &str) -> Result<Rational, LinalgError> {
    let invalid = || LinalgError::InvalidRational(text.to_string());
    let trimmed = text.trim();
    let well_formed = |part: &str| {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) if well_formed(n) && d.bytes().all(|b| b.is_ascii_digit()) && !d.is_empty() => (n, d),
        None if well_formed(trimmed) => (trimmed, "1"),
        _ => return Err(invalid()),
    };
    let numer: BigInt = numer.parse().map_err(|_| invalid())?;
    let denom: BigInt = denom.parse().map_err(|_| invalid())?;
    if denom.is_zero() {
        return Err(invalid());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::{format_rational, Rational};
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_rational(v))?;
            }
            seq.end()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -1/3 ").unwrap(), ratio(-1, 3));
        assert_eq!(format_rational(&ratio(-5, 2)), "-5/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
    }

    #[test]
    fn rejects_non_rationals() {
        for bad in ["", "1/0", "0.5", "sqrt(17)", "1/-2", "a", "1/", "/2", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }
}
