//! Deterministic number formatting shared by the JSON/CSV surfaces:
//! rationals as "p/q" strings, floats rounded to 12 significant digits.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num)
        .map_err(|_| Error::Parse { pos: 0, msg: format!("bad rational numerator '{num}'") })?;
    let den = BigInt::from_str(den)
        .map_err(|_| Error::Parse { pos: 0, msg: format!("bad rational denominator '{den}'") })?;
    if den.is_zero() {
        return Err(Error::Parse { pos: 0, msg: "zero denominator".into() });
    }
    Ok(BigRational::new(num, den))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Round to 12 significant decimal digits; the value every emitted float
/// passes through so output is byte-stable.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0_f64.max(x); // normalizes -0.0 to 0.0
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - exp);
    (x * scale).round() / scale
}

pub fn json_f64(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(round_sig12(x))
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// Is `|r|` exactly representable and equal after round-trip? Used by tests.
pub fn ratio_abs(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        let r = parse_ratio("-3/4").unwrap();
        assert_eq!(format_ratio(&r), "-3/4");
        assert_eq!(parse_ratio("2").unwrap(), parse_ratio("4/2").unwrap());
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn sig12_is_idempotent() {
        for &x in &[0.0, 1.0, -0.5, 0.7071067811865476, 1e-9, 123456.789012345] {
            let r = round_sig12(x);
            assert_eq!(round_sig12(r), r);
        }
        assert_eq!(round_sig12(0.70710678118654757), round_sig12(0.70710678118654752));
    }
}
