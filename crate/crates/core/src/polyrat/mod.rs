//! Exact integer polynomials, Laurent polynomials and rational functions.
//!
//! JSON forms: a polynomial is `{"coeffs": {"<exp>": "<int>"}}` with both keys
//! and values as decimal strings (highest exponent first); a rational function
//! is `{"num": <poly>, "den": <poly>}`.

mod intpoly;
mod laurent;
mod ratfn;
mod text;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
pub use ratfn::RatFn;

use crate::error::{Error, Result};

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = text::parse_terms(s)?;
        if let Some((e, _)) = terms.iter().next().filter(|(e, _)| **e < 0) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("negative exponent {e} in a polynomial"),
            });
        }
        Ok(IntPoly::from_terms(
            terms.into_iter().map(|(e, c)| (e as usize, c)),
        ))
    }
}

struct CoeffMap(Vec<(String, String)>);

impl Serialize for CoeffMap {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(self.0.len()))?;
        for (e, c) in &self.0 {
            m.serialize_entry(e, c)?;
        }
        m.end()
    }
}

fn serialize_terms<'a, S, I>(terms: I, ser: S) -> std::result::Result<S::Ok, S::Error>
where
    S: Serializer,
    I: Iterator<Item = (i64, &'a BigInt)>,
{
    let coeffs = CoeffMap(terms.map(|(e, c)| (e.to_string(), c.to_string())).collect());
    let mut m = ser.serialize_map(Some(1))?;
    m.serialize_entry("coeffs", &coeffs)?;
    m.end()
}

#[derive(Deserialize)]
struct RawPoly {
    coeffs: BTreeMap<String, String>,
}

impl RawPoly {
    fn terms<E: serde::de::Error>(self) -> std::result::Result<Vec<(i64, BigInt)>, E> {
        self.coeffs
            .into_iter()
            .map(|(e, c)| {
                let e: i64 = e.parse().map_err(|_| E::custom(format!("bad exponent {e:?}")))?;
                let c: BigInt = c
                    .parse()
                    .map_err(|_| E::custom(format!("bad coefficient {c:?}")))?;
                Ok((e, c))
            })
            .collect()
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_terms(self.terms().rev().map(|(e, c)| (e as i64, c)), ser)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let terms = RawPoly::deserialize(de)?.terms::<D::Error>()?;
        if terms.iter().any(|(e, _)| *e < 0) {
            return Err(D::Error::custom("negative exponent in a polynomial"));
        }
        Ok(IntPoly::from_terms(
            terms.into_iter().map(|(e, c)| (e as usize, c)),
        ))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_terms(self.terms().rev(), ser)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(LaurentPoly::from_terms(
            RawPoly::deserialize(de)?.terms::<D::Error>()?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct RawRatFn {
    num: IntPoly,
    den: IntPoly,
}

impl Serialize for RatFn {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RawRatFn {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRatFn::deserialize(de)?;
        RatFn::new(raw.num, raw.den).map_err(D::Error::custom)
    }
}
