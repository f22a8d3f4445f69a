//! Serde adapters writing naturals as JSON numbers when they fit in `u64`
//! and as decimal strings otherwise.

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::arith::Nat;

pub fn serialize<S: Serializer>(x: &Nat, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&x.to_str_radix(10)),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
    d.deserialize_any(NatVisitor)
}

struct NatVisitor;

impl Visitor<'_> for NatVisitor {
    type Value = Nat;

    fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("a nonnegative integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Nat, E> {
        Ok(Nat::from(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Nat, E> {
        u64::try_from(v)
            .map(Nat::from)
            .map_err(|_| E::custom("negative value where a natural number was expected"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Nat, E> {
        v.parse::<Nat>().map_err(E::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Wrapped(#[serde(with = "self")] Nat);

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Nat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| Wrapped(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Nat>, D::Error> {
        let items: Vec<Wrapped> = Vec::deserialize(d)?;
        Ok(items.into_iter().map(|w| w.0).collect())
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Nat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&Wrapped(v.clone())),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Nat>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
