//! Exact rational numbers and the small helpers built on them.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"-p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; scale down first
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as usize;
        let nn = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let dd = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
        nn / dd
    })
}

/// Falling factorial power `x (x-1) ... (x-m+1)`; equals 1 for `m = 0`.
pub fn falling(x: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    let mut y = x.clone();
    for _ in 0..m {
        acc *= &y;
        y -= Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

pub fn pow(x: &Rational, m: usize) -> Rational {
    num::pow(x.clone(), m)
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub(crate) fn require_positive(theta: &Rational, what: &str) -> Result<()> {
    if theta.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires theta > 0, got {theta}")))
    }
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of `"p/q"` strings.
pub mod serde_str_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}
