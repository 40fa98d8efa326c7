//! Serde helpers: integers and rationals travel as decimal strings
//! (`"-3"`, `"1/2"`) so nothing is lost to JSON number precision.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn text(self) -> String {
        match self {
            Scalar::Text(s) => s,
            Scalar::Int(v) => v.to_string(),
        }
    }
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub mod int_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Scalar>::deserialize(d)?
            .into_iter()
            .map(|x| {
                let t = x.text();
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("invalid integer {t:?}")))
            })
            .collect()
    }
}

pub mod rat_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(rational_to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Scalar>::deserialize(d)?
            .into_iter()
            .map(|x| {
                let t = x.text();
                parse_rational(&t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}")))
            })
            .collect()
    }
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_string(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = Scalar::deserialize(d)?.text();
        parse_rational(&t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}")))
    }
}
