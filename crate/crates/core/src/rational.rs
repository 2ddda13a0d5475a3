//! Exact rational helpers: parsing, decimal rendering and the `{num, den}` wire form.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MgError;

/// Exact rational used for every MG value and prelog.
pub type Q = Ratio<i128>;

/// Shorthand constructor; reduces the fraction.
pub fn q(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

/// Integer as a rational.
pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

/// Parses `"p/q"`, integers and finite decimals (`"-0.125"`) exactly.
pub fn parse_q(text: &str) -> Result<Q, MgError> {
    let s = text.trim();
    let bad = || MgError::Parse(format!("not a rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(MgError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(q(n, d));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) || frac_part.len() > 30 {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: i128 = digits.parse().map_err(|_| bad())?;
    let d = 10i128.pow(frac_part.len() as u32);
    let v = q(n, d);
    Ok(if neg { -v } else { v })
}

fn only_two_and_five(mut d: i128) -> bool {
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 5 == 0 {
        d /= 5;
    }
    d == 1
}

/// Decimal rendering: exact when the denominator divides a power of ten,
/// otherwise rounded half-up to 12 significant digits.
pub fn to_decimal(v: &Q) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let sign = if v.is_negative() { "-" } else { "" };
    let a = v.abs();
    let (n, d) = (*a.numer(), *a.denom());
    if only_two_and_five(d) {
        let mut scale = 0u32;
        while 10i128.pow(scale) % d != 0 {
            scale += 1;
        }
        let digits = n * (10i128.pow(scale) / d);
        return format!("{sign}{}", place_point(digits, scale));
    }
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i32 = 0;
    let ten = qi(10);
    let mut probe = Q::from_integer(1);
    if a >= probe {
        while a >= probe * ten {
            probe *= ten;
            e += 1;
        }
    } else {
        while a < probe {
            probe /= ten;
            e -= 1;
        }
    }
    let shift = 11 - e;
    let scaled = if shift >= 0 { a * qi(10i128.pow(shift as u32)) } else { a / qi(10i128.pow((-shift) as u32)) };
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = whole;
    if rem * 2 >= *scaled.denom() {
        digits += 1;
    }
    let mut shift = shift;
    if digits >= 10i128.pow(12) {
        digits /= 10;
        shift -= 1;
    }
    let text =
        if shift >= 0 { place_point(digits, shift as u32) } else { (digits * 10i128.pow((-shift) as u32)).to_string() };
    format!("{sign}{text}")
}

fn place_point(digits: i128, scale: u32) -> String {
    if scale == 0 {
        return digits.to_string();
    }
    let raw = format!("{:0>width$}", digits, width = scale as usize + 1);
    let (int, frac) = raw.split_at(raw.len() - scale as usize);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

/// `p/q` form, or the bare integer.
pub fn to_fraction(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn to_f64(v: &Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Wire form of a rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QJson {
    pub num: i128,
    pub den: i128,
}

impl From<Q> for QJson {
    fn from(v: Q) -> Self {
        QJson { num: *v.numer(), den: *v.denom() }
    }
}

impl TryFrom<QJson> for Q {
    type Error = MgError;
    fn try_from(j: QJson) -> Result<Q, MgError> {
        if j.den == 0 {
            return Err(MgError::Parse("zero denominator".into()));
        }
        Ok(q(j.num, j.den))
    }
}

/// `#[serde(with = "serde_q")]` adapter.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        QJson::from(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let j = QJson::deserialize(d)?;
        Q::try_from(j).map_err(serde::de::Error::custom)
    }
}
