//! Group names on the command line.
//!
//! Accepted: `su3`, `su(3)`, `sp2`, `sp(2)`, `spin7`, `spin(7)`, `g2`,
//! `f4`, `e6`, `e7`, `e8`, `so5`, and the Cartan forms `a2`, `b3`, `c2`,
//! `d4`. `spin3` is `su2` and `spin6` is `su4`; `spin4` is not simple.

use serde::{Deserialize, Deserializer, Serializer};
use twistk::closedform::ClosedFormError;
use twistk::{Family, GroupId};

fn split_name(s: &str) -> Option<(&str, Option<u32>)> {
    let s = s.trim();
    if let Some(open) = s.find('(') {
        let inner = s[open + 1..].strip_suffix(')')?;
        return Some((&s[..open], Some(inner.trim().parse().ok()?)));
    }
    let digits = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let n = if digits < s.len() {
        Some(s[digits..].parse().ok()?)
    } else {
        None
    };
    Some((&s[..digits], n))
}

pub fn parse_group(name: &str) -> Result<GroupId, ClosedFormError> {
    let lower = name.to_ascii_lowercase();
    let bad = || ClosedFormError::InvalidGroup(format!("unknown group `{name}`"));
    let (prefix, n) = split_name(&lower).ok_or_else(bad)?;
    match (prefix, n) {
        ("su", Some(m)) if m >= 2 => GroupId::a(m - 1),
        ("sp", Some(m)) => GroupId::c(m),
        ("spin", Some(4)) => Err(ClosedFormError::InvalidGroup(
            "spin4 = su2 x su2 is not simple".into(),
        )),
        ("spin", Some(3)) => GroupId::a(1),
        ("spin", Some(6)) => GroupId::a(3),
        ("spin", Some(m)) if m >= 5 && m % 2 == 1 => GroupId::b(m / 2),
        ("spin", Some(m)) if m >= 8 => GroupId::d(m / 2),
        ("so", Some(5)) => Ok(GroupId::so5()),
        ("a", Some(m)) => GroupId::a(m),
        ("b", Some(m)) => GroupId::b(m),
        ("c", Some(m)) => GroupId::c(m),
        ("d", Some(m)) => GroupId::d(m),
        ("g", Some(2)) => Ok(GroupId::g2()),
        ("f", Some(4)) => GroupId::exceptional(Family::F4),
        ("e", Some(6)) => GroupId::exceptional(Family::E6),
        ("e", Some(7)) => GroupId::exceptional(Family::E7),
        ("e", Some(8)) => GroupId::exceptional(Family::E8),
        _ => Err(bad()),
    }
}

/// Serde adapter writing a group as its canonical name.
pub mod by_name {
    use super::*;

    pub fn serialize<S: Serializer>(g: &GroupId, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(g)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GroupId, D::Error> {
        let name = String::deserialize(d)?;
        parse_group(&name).map_err(serde::de::Error::custom)
    }
}
