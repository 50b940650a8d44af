//! Exact rational numbers and their `p/q` text form.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational used for every exact computation.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}` (expected p/q)")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q` or `-p/q`. Zero denominators are rejected.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    let err = || ParseRationalError(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| err())?;
    let d = BigInt::from_str(den).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

pub fn from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn to_f64(value: &Rational) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Smallest positive factor turning every entry into an integer, then
/// divided by the gcd of the resulting integers. Returns the scaled
/// integers; all-zero input is returned unchanged.
pub fn to_coprime_integers(values: &[Rational]) -> Vec<BigInt> {
    use num::Integer;
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &gcd).collect()
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// serde helpers for fields stored as `"p/q"` strings. Bare JSON integers
/// are accepted on input.
pub mod text {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(from_int(i)),
        }
    }

    pub mod map {
        use super::*;
        use indexmap::IndexMap;
        use serde::ser::SerializeMap;

        pub fn serialize<S: Serializer>(
            value: &IndexMap<String, Rational>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            let mut m = s.serialize_map(Some(value.len()))?;
            for (k, v) in value {
                m.serialize_entry(k, &v.to_string())?;
            }
            m.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<IndexMap<String, Rational>, D::Error> {
            let raw: IndexMap<String, Raw> = IndexMap::deserialize(d)?;
            raw.into_iter()
                .map(|(k, v)| {
                    let q = match v {
                        Raw::Text(t) => parse(&t).map_err(serde::de::Error::custom)?,
                        Raw::Int(i) => from_int(i),
                    };
                    Ok((k, q))
                })
                .collect()
        }
    }
}
