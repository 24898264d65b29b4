//! Exact rational arithmetic helpers shared across the crate.
//!
//! All invariant computations are carried out with arbitrary-precision
//! rationals: triviality of the spirality homomorphism and the witness
//! certificates are exact predicates, so floating point is only used for
//! log-domain summaries that are explicitly approximate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses a rational written as `p/q` or as a plain integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Parses a rational and requires it to be strictly positive.
pub fn parse_positive_rational(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s)?;
    if r.is_positive() {
        Ok(r)
    } else {
        Err(format!("rational {s:?} must be positive"))
    }
}

/// Natural logarithm of a positive big integer.
///
/// Stays accurate when the integer is far beyond the `f64` range by
/// splitting off high bits: `ln(m * 2^k) = ln(m) + k ln 2`.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small integer fits f64").ln();
    }
    let shift = bits - 53;
    let head = (x >> shift).to_f64().expect("53-bit head fits f64");
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Serde adapter storing rationals as `"p/q"` (or `"p"`) strings.
pub mod rational_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for optional `"p/q"` fields.
pub mod opt_rational_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, ser: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => ser.serialize_some(&r.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(de)?;
        match s {
            Some(s) => parse_rational(&s).map(Some).map_err(de::Error::custom),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational(" 5/10 ").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn positive_guard() {
        assert!(parse_positive_rational("0").is_err());
        assert!(parse_positive_rational("-3/2").is_err());
        assert!(parse_positive_rational("3/2").is_ok());
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ratio(6, 4).to_string(), "3/2");
        assert_eq!(ratio(8, 2).to_string(), "4");
        assert_eq!(Rational::one().to_string(), "1");
    }

    #[test]
    fn ln_bigint_matches_f64_for_small_values() {
        for v in [1i64, 2, 10, 1_000_000] {
            let exact = ln_bigint(&BigInt::from(v));
            assert!((exact - (v as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn ln_bigint_handles_huge_values() {
        // 2^10000: ln = 10000 ln 2
        let x = BigInt::from(1) << 10000;
        let expected = 10000.0 * std::f64::consts::LN_2;
        assert!((ln_bigint(&x) - expected).abs() / expected < 1e-12);
    }
}
