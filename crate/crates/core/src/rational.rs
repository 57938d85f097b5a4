//! Exact rational helpers: parsing, formatting and dyadic rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GyroError;

pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, integers and finite decimals (`"-0.125"`, `"3."`, `".5"`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, GyroError> {
    let bad = || GyroError::RationalParse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut mantissa: BigInt = format!("0{whole}{frac}").parse().map_err(|_| bad())?;
    if negative {
        mantissa = -mantissa;
    }
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Ok(Rational::new(mantissa, scale))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits.
pub fn format_decimal(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{:.*e}", digits.saturating_sub(1), x);
    match formatted.parse::<f64>() {
        Ok(v) => format!("{v}"),
        Err(_) => formatted,
    }
}

/// Exact conversion of a finite float into a rational.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest `k / 2^j` (minimal `j`, then minimal `k`) inside `[lo, hi)`.
///
/// Requires `lo < hi`.
pub fn simplest_dyadic_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    let two = BigInt::from(2);
    let mut den = BigInt::one();
    loop {
        let scaled = lo * Rational::from_integer(den.clone());
        let k = scaled.ceil().to_integer();
        let candidate = Rational::new(k, den.clone());
        if &candidate < hi {
            return candidate;
        }
        den *= &two;
    }
}

/// Smallest dyadic `k / 2^bits` that is `>= x`.
pub fn dyadic_ceil(x: &Rational, bits: u32) -> Rational {
    let den = num_traits::pow(BigInt::from(2), bits as usize);
    let k = (x * Rational::from_integer(den.clone())).ceil().to_integer();
    Rational::new(k, den)
}

/// Ordering with a fast path for values whose parts fit in `i64`.
pub fn cmp_rational(a: &Rational, b: &Rational) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    match (a.numer().to_i64(), a.denom().to_i64(), b.numer().to_i64(), b.denom().to_i64()) {
        (Some(p), Some(q), Some(r), Some(s)) => (i128::from(p) * i128::from(s)).cmp(&(i128::from(r) * i128::from(q))),
        _ => a.cmp(b),
    }
}

pub fn min_rational<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
