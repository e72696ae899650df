//! JSON encoding for big integers: a plain number when it fits in `i64`,
//! a decimal string otherwise.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Wire {
    Int(i64),
    Text(String),
}

pub(crate) fn to_wire(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn from_wire<E: serde::de::Error>(w: Wire) -> Result<BigInt, E> {
    match w {
        Wire::Int(v) => Ok(BigInt::from(v)),
        Wire::Text(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub(crate) fn serialize_seq<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&to_wire(x))?;
    }
    seq.end()
}

pub(crate) fn deserialize_seq<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let raw = Vec::<Wire>::deserialize(d)?;
    raw.into_iter().map(from_wire).collect()
}

pub(crate) fn deserialize_rows<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<Vec<Vec<BigInt>>, D::Error> {
    let raw = Vec::<Vec<Wire>>::deserialize(d)?;
    let rows: Result<Vec<Vec<BigInt>>, D::Error> = raw
        .into_iter()
        .map(|r| r.into_iter().map(from_wire).collect())
        .collect();
    let rows = rows?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
    }
    Ok(rows)
}

/// Serde adapter for a single `BigInt` field.
pub mod scalar {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_wire(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_wire(Wire::deserialize(d)?)
    }
}
