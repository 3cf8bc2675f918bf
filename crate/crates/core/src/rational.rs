//! Parsing and formatting of exact rationals.
//!
//! Every rational leaving the crate is written as `num/den` in lowest terms
//! (integers included, e.g. `1/1`). Input accepts `num/den`, plain integers
//! and finite decimal strings such as `0.35`, which are converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Inclusive `start:stop:step` range, or a comma separated list of values.
pub fn parse_range(text: &str) -> Result<Vec<BigRational>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(parse_rational).collect(),
        [start, stop, step] => {
            let start = parse_rational(start)?;
            let stop = parse_rational(stop)?;
            let step = parse_rational(step)?;
            if !step.is_positive() {
                return Err(Error::Parse(format!(
                    "range step must be positive in {text:?}"
                )));
            }
            let mut out = Vec::new();
            let mut x = start;
            while x <= stop {
                out.push(x.clone());
                x += &step;
                if out.len() > 1_000_000 {
                    return Err(Error::Capacity(format!(
                        "range {text:?} has too many points"
                    )));
                }
            }
            Ok(out)
        }
        _ => Err(Error::Parse(format!(
            "expected start:stop:step or a list, got {text:?}"
        ))),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
