//! Exact rational scalars and their canonical `p/q` text form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The scalar field of every computation in this crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Lowest-terms `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::MalformedRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => BigInt::from_str(t).map(Q::from_integer).map_err(|_| bad()),
    }
}

pub fn sign(odd: bool) -> Q {
    if odd {
        -one()
    } else {
        one()
    }
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

/// A rational that serializes as its canonical string. Deserialization also
/// accepts bare JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient(pub Q);

impl From<Q> for Coefficient {
    fn from(x: Q) -> Self {
        Coefficient(x)
    }
}

impl From<i64> for Coefficient {
    fn from(x: i64) -> Self {
        Coefficient(q(x))
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coefficient;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coefficient, E> {
                parse_rational(v).map(Coefficient).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(q(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(Q::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(format_rational(&frac(6, 4)), "3/2");
        assert_eq!(format_rational(&frac(-6, 3)), "-2");
        assert_eq!(format_rational(&zero()), "0");
        assert_eq!(parse_rational(" 4/6 ").unwrap(), frac(2, 3));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn coefficient_accepts_integers() {
        let c: Coefficient = serde_json::from_str("3").unwrap();
        assert_eq!(c.0, q(3));
        let c: Coefficient = serde_json::from_str("\"-1/3\"").unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "\"-1/3\"");
    }
}
