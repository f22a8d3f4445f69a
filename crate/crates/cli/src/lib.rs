//! Pieces of the `twistk` command-line tool that are worth testing on
//! their own: group-name parsing, twist ranges, verification rows and
//! table output.

pub mod failure;
pub mod groups;
pub mod range;
pub mod report;
pub mod table;

pub use failure::Failure;
pub use groups::parse_group;
pub use range::HRange;
pub use report::{report_row, verify, ReportRow, Verification};
pub use table::{table_rows, write_table, TableFormat, TableRow};

/// Applies `TWISTK_THREADS` to the global thread pool, if set.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("TWISTK_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Failure::Usage(format!(
                "TWISTK_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.into()))
}
