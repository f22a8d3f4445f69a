//! Cross-route verification rows.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twistk::arith::{self, nat};
use twistk::closedform::{self, ClosedFormError, DouglasSpSweep};
use twistk::segal::{self, SegalError};
use twistk::{khorami, Family, GroupId, Nat};

use crate::failure::Failure;
use crate::groups;
use crate::range::HRange;

/// Per-parity orders for `so5`; `c(G, h)` for everything else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(with = "groups::by_name")]
    pub group: GroupId,
    #[serde(with = "twistk::natser")]
    pub h: Nat,
    #[serde(with = "twistk::natser")]
    pub braun: Nat,
    #[serde(
        default,
        with = "twistk::natser::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub douglas: Option<Nat>,
    #[serde(
        default,
        with = "twistk::natser::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub segal_even: Option<Nat>,
    #[serde(
        default,
        with = "twistk::natser::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub segal_odd: Option<Nat>,
    #[serde(
        default,
        with = "twistk::natser::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub khorami: Option<Nat>,
    pub agree: bool,
}

impl ReportRow {
    fn columns(&self) -> Vec<(&'static str, &Nat)> {
        let mut out = vec![("braun", &self.braun)];
        for (name, v) in [
            ("douglas", &self.douglas),
            ("segal even", &self.segal_even),
            ("segal odd", &self.segal_odd),
            ("khorami", &self.khorami),
        ] {
            if let Some(v) = v {
                out.push((name, v));
            }
        }
        out
    }

    fn all_agree(&self) -> bool {
        self.columns().iter().all(|(_, v)| **v == self.braun)
    }

    /// `group h=...: braun=..., douglas=..., ...`
    pub fn summary(&self) -> String {
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        format!("{} h={}: {}", self.group, self.h, cols.join(", "))
    }

    /// Valuations of every column at each prime dividing `h`.
    pub fn diagnostics(&self) -> Vec<String> {
        let Ok(factors) = arith::factorize(&self.h) else {
            return Vec::new();
        };
        factors
            .iter()
            .map(|(p, _)| {
                let vals: Vec<String> = self
                    .columns()
                    .iter()
                    .map(|(name, v)| match arith::nu_p(p, v) {
                        Ok(nu) => format!("{name} {nu}"),
                        Err(_) => format!("{name} ?"),
                    })
                    .collect();
                format!("  nu_{p}: {}", vals.join(", "))
            })
            .collect()
    }
}

fn optional<T, E>(r: Result<T, E>, absent: impl Fn(&E) -> bool) -> Result<Option<T>, E> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if absent(&e) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One row, or `None` when `group` is `so5` and `4 | h`.
///
/// `douglas` overrides the Douglas column (used by sweeps that evaluate
/// the `Sp(n)` sum incrementally).
pub fn report_row(
    group: &GroupId,
    h: &Nat,
    trunc: usize,
    douglas: Option<Nat>,
) -> Result<Option<ReportRow>, Failure> {
    if h.is_zero() {
        return Err(Failure::Usage("twist h must be positive".into()));
    }
    let so5 = group.family() == Family::SO5;
    if so5 && h.trailing_zeros().unwrap_or(0) >= 2 {
        return Ok(None);
    }
    let braun = if so5 {
        closedform::so5_k(h)?.even.torsion_order()
    } else {
        closedform::braun_c(group, h)?
    };
    let douglas = match douglas {
        Some(d) => Some(d),
        None if so5 => None,
        None => optional(closedform::douglas_c(group, h), |e| {
            matches!(e, ClosedFormError::NoDouglasFormula(_))
        })?,
    };
    let segal = optional(segal::k_orders(group, h), |e| {
        matches!(e, SegalError::UnsupportedGroup(_))
    })?;
    let (segal_even, segal_odd) = match segal {
        Some(k) => {
            let (e, o) = k.orders();
            (Some(e), Some(o))
        }
        None => (None, None),
    };
    let khorami = if *group == GroupId::a(1)? {
        Some(khorami::tensor_over_r(h, trunc)?.torsion_order())
    } else {
        None
    };
    let mut row = ReportRow {
        group: *group,
        h: h.clone(),
        braun,
        douglas,
        segal_even,
        segal_odd,
        khorami,
        agree: false,
    };
    row.agree = row.all_agree();
    Ok(Some(row))
}

/// Douglas's `Sp(n)` sum for every `h` in `range`, by one incremental pass.
fn douglas_sp_column(n: u32, range: HRange) -> Result<Vec<Nat>, Failure> {
    let skip =
        usize::try_from(range.lo - 1).map_err(|_| Failure::Usage("range too large".into()))?;
    let take =
        usize::try_from(range.len()).map_err(|_| Failure::Usage("range too large".into()))?;
    Ok(DouglasSpSweep::new(n)?
        .skip(skip)
        .take(take)
        .map(|(_, c)| c)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub rows: Vec<ReportRow>,
    /// `(group, h)` pairs outside the covered range (`so5` with `4 | h`).
    pub skipped: Vec<(GroupId, u64)>,
}

impl Verification {
    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.agree)
    }
}

/// Rows for every group over `range`, grouped by group then ordered by `h`.
/// Chunks run in parallel and are merged in input order.
pub fn verify(
    groups: &[GroupId],
    range: HRange,
    trunc: usize,
    chunk: u64,
) -> Result<Verification, Failure> {
    let mut out = Verification {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for group in groups {
        let douglas = match (group.family(), group.rank_param()) {
            (Family::C, Some(n)) => Some(douglas_sp_column(n, range)?),
            _ => None,
        };
        let chunks: Vec<Vec<(u64, Option<ReportRow>)>> = range
            .chunks(chunk)
            .par_iter()
            .map(|c| {
                c.iter()
                    .map(|h| {
                        let pre = douglas.as_ref().map(|d| d[(h - range.lo) as usize].clone());
                        Ok((h, report_row(group, &nat(h), trunc, pre)?))
                    })
                    .collect::<Result<Vec<_>, Failure>>()
            })
            .collect::<Result<_, _>>()?;
        for (h, row) in chunks.into_iter().flatten() {
            match row {
                Some(r) => out.rows.push(r),
                None => out.skipped.push((*group, h)),
            }
        }
    }
    Ok(out)
}
