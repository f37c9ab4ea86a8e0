//! Serde adapters for arbitrary-size integers: values that fit in 64 bits are
//! written as JSON numbers, larger ones as decimal strings. Both forms are
//! accepted when reading.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Unsigned(u64),
    Signed(i64),
    Text(String),
}

fn parse<T: std::str::FromStr, E: de::Error>(text: &str) -> Result<T, E> {
    text.parse()
        .map_err(|_| E::custom(format!("{text:?} is not an integer")))
}

pub mod uint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match x.to_u64() {
            Some(v) => Repr::Unsigned(v),
            None => Repr::Text(x.to_string()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Unsigned(v) => Ok(BigUint::from(v)),
            Repr::Signed(v) => Err(de::Error::custom(format!("{v} is negative"))),
            Repr::Text(t) => parse(&t),
        }
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => Repr::Signed(v),
            None => Repr::Text(x.to_string()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Unsigned(v) => Ok(BigInt::from(v)),
            Repr::Signed(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => parse(&t),
        }
    }
}

pub mod uint_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Item(#[serde(with = "super::uint")] BigUint);

    pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        xs.iter()
            .map(|x| Item(x.clone()))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Ok(Vec::<Item>::deserialize(d)?.into_iter().map(|i| i.0).collect())
    }
}
