//! Exact rational scalars: parsing, formatting, and binomial coefficients.
//!
//! Every quantity the crate computes is a ratio of arbitrary-precision
//! integers kept in lowest terms. Values cross the JSON boundary as `"p"` or
//! `"p/q"` strings so that no consumer is forced through floating point.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` with optional sign, surrounding whitespace ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational {
        literal: text.to_string(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Render as `"p"` when the denominator is 1, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with 15 significant digits, computed exactly from
/// the integer parts (no float round trip). Trailing zeros are stripped.
pub fn decimal_string(r: &Rational) -> String {
    const SIG: u32 = 15;
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let p = r.numer().abs();
    let q = r.denom().clone();

    let int_part: BigInt = &p / &q;
    let frac_digits = if int_part.is_zero() {
        // Leading zeros after the point do not count as significant digits.
        let mut shift: u32 = 0;
        let mut scaled = p.clone();
        loop {
            scaled *= 10;
            shift += 1;
            if scaled >= q {
                break;
            }
        }
        shift - 1 + SIG
    } else {
        let digits = int_part.to_string().len() as u32;
        SIG.saturating_sub(digits)
    };

    // Round half away from zero at the last kept digit.
    let pow = BigInt::from(10u32).pow(frac_digits);
    let scaled: BigInt = (&p * &pow * 2 + &q) / (&q * 2);
    let digits = scaled.to_string();

    let text = if frac_digits == 0 {
        digits
    } else if digits.len() > frac_digits as usize {
        let split = digits.len() - frac_digits as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!(
            "0.{}{}",
            "0".repeat(frac_digits as usize - digits.len()),
            digits
        )
    };
    let trimmed = if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.')
    } else {
        &text
    };
    format!("{sign}{trimmed}")
}

/// Approximate as f64 (display and statistics only).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back through the 15-digit decimal for extreme magnitudes.
        decimal_string(r).parse().unwrap_or(f64::NAN)
    })
}

thread_local! {
    // Rows of Pascal's triangle, grown on demand.
    static PASCAL: RefCell<Vec<Vec<BigInt>>> = const { RefCell::new(Vec::new()) };
}

/// Binomial coefficient `C(n, k)` with arbitrary precision, memoized.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    PASCAL.with(|cell| {
        let mut rows = cell.borrow_mut();
        while rows.len() <= n {
            let m = rows.len();
            let mut row = vec![BigInt::one(); m + 1];
            for j in 1..m {
                row[j] = &rows[m - 1][j - 1] + &rows[m - 1][j];
            }
            rows.push(row);
        }
        rows[n][k].clone()
    })
}

/// `C(n, k)` as a rational, for direct use in signature formulas.
pub fn binomial_rational(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Serde adapter: `Vec<Rational>` as an array of `"p/q"` strings.
pub mod rational_vec_serde {
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Formats every entry of a rational vector.
pub fn format_vec(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// Decimal (15 significant digits) rendering of every entry.
pub fn decimal_vec(values: &[Rational]) -> Vec<String> {
    values.iter().map(decimal_string).collect()
}
