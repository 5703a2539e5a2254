//! Exact scalars: rationals, real quadratic numbers and small rational polynomials.

mod poly;
mod quad;

pub use poly::RatPoly;
pub use quad::QuadNum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rat::new(n, d);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// `"p/q"` with the denominator omitted when it is 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Fixed significant-digit rendering for display; never used in computation.
pub fn format_decimal(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..(digits as i32)).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

/// Serde adaptor that writes a rational as its exact `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRat(pub Rat);

impl From<Rat> for ExactRat {
    fn from(r: Rat) -> Self {
        ExactRat(r)
    }
}

impl Serialize for ExactRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(&self.0))
    }
}

/// Accepts `"p/q"` strings and plain JSON integers.
impl<'de> Deserialize<'de> for ExactRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = ExactRat;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an exact rational such as \"3/4\" or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<ExactRat, E> {
                parse_rat(s).map(ExactRat).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, n: i64) -> std::result::Result<ExactRat, E> {
                Ok(ExactRat(int(n)))
            }
            fn visit_u64<E: serde::de::Error>(self, n: u64) -> std::result::Result<ExactRat, E> {
                Ok(ExactRat(Rat::from_integer(n.into())))
            }
        }
        deserializer.deserialize_any(V)
    }
}

pub fn exact_vec(v: &[Rat]) -> Vec<ExactRat> {
    v.iter().cloned().map(ExactRat).collect()
}

pub fn unwrap_exact(v: &[ExactRat]) -> Vec<Rat> {
    v.iter().map(|r| r.0.clone()).collect()
}
