//! JSON-friendly serde forms for exact numbers.
//!
//! Integers that fit in an `i64` are written as JSON numbers and larger ones as
//! decimal strings; rationals are always strings such as `"-3/2"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{IntPoly, RatPoly, Rational};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Text(String),
}

fn int_repr(x: &BigInt) -> IntRepr {
    match x.to_i64() {
        Some(v) => IntRepr::Small(v),
        None => IntRepr::Text(x.to_string()),
    }
}

fn int_from_repr<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Small(v) => Ok(BigInt::from(v)),
        IntRepr::Text(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

fn rational_from_str<E: serde::de::Error>(s: &str) -> Result<Rational, E> {
    crate::parse::parse_rational(s).map_err(|e| E::custom(e.to_string()))
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<IntRepr> = self.coeffs().iter().map(int_repr).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<IntRepr>::deserialize(d)?;
        let c = v.into_iter().map(int_from_repr).collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(c))
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c = v.iter().map(|s| rational_from_str(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(RatPoly::new(c))
    }
}

/// `#[serde(with = "crate::serial::big")]`
pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        int_repr(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        int_from_repr(IntRepr::deserialize(d)?)
    }
}

/// `#[serde(with = "crate::serial::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        rational_from_str(&t)
    }
}

/// `#[serde(with = "crate::serial::rationals")]`
pub mod rationals {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|t| rational_from_str(t)).collect()
    }
}
