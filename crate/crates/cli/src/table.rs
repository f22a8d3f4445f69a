//! `c(G, h)` tables in CSV, JSON lines or Markdown.

use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twistk::arith::nat;
use twistk::closedform;
use twistk::{Family, GroupId, KResult, Nat};

use crate::failure::Failure;
use crate::groups;
use crate::range::HRange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Md,
}

/// `c` is `c(G, h)`, or for `so5` the order of each parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(with = "groups::by_name")]
    pub group: GroupId,
    #[serde(with = "twistk::natser")]
    pub h: Nat,
    #[serde(with = "twistk::natser")]
    pub c: Nat,
    pub even: String,
    pub odd: String,
}

/// The closed-form result for `group` at `h`.
pub fn closed_form(group: &GroupId, h: &Nat) -> Result<KResult, Failure> {
    Ok(if group.family() == Family::SO5 {
        closedform::so5_k(h)?
    } else {
        closedform::assemble_full(group, h)?
    })
}

pub fn table_row(group: &GroupId, h: &Nat) -> Result<TableRow, Failure> {
    let k = closed_form(group, h)?;
    let c = if group.family() == Family::SO5 {
        k.even.torsion_order()
    } else {
        closedform::braun_c(group, h)?
    };
    Ok(TableRow {
        group: *group,
        h: h.clone(),
        c,
        even: k.even.to_string(),
        odd: k.odd.to_string(),
    })
}

pub fn table_rows(groups: &[GroupId], range: HRange, chunk: u64) -> Result<Vec<TableRow>, Failure> {
    let mut rows = Vec::new();
    for group in groups {
        let chunks: Vec<Vec<TableRow>> = range
            .chunks(chunk)
            .par_iter()
            .map(|c| c.iter().map(|h| table_row(group, &nat(h))).collect())
            .collect::<Result<_, _>>()?;
        rows.extend(chunks.into_iter().flatten());
    }
    Ok(rows)
}

pub fn write_table<W: Write>(
    rows: &[TableRow],
    format: TableFormat,
    out: W,
) -> Result<(), Failure> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(anyhow::Error::from)?;
            }
            w.flush()?;
        }
        TableFormat::Json => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(anyhow::Error::from)?;
                writeln!(out)?;
            }
        }
        TableFormat::Md => {
            let mut out = out;
            writeln!(out, "| group | h | c | even | odd |")?;
            writeln!(out, "|---|---:|---:|---|---|")?;
            for r in rows {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    r.group, r.h, r.c, r.even, r.odd
                )?;
            }
        }
    }
    Ok(())
}
