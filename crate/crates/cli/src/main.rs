use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use twistk::closedform::{self, Route};
use twistk::khorami::{self, DEFAULT_TRUNCATION};
use twistk::segal::{self, FibrationSpec};
use twistk::{arith, AbGroup, GroupId, KResult, Nat};
use twistk_cli::table::closed_form;
use twistk_cli::{parse_group, table_rows, verify, write_table, Failure, HRange, TableFormat};

#[derive(Parser)]
#[command(
    name = "twistk",
    version,
    about = "Twisted K-theory of compact Lie groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Braun,
    Douglas,
    Segal,
    Khorami,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// K-groups of one group at one twist.
    Order {
        group: String,
        #[arg(value_parser = parse_nat)]
        h: Nat,
        #[arg(long, value_enum, default_value_t = RouteArg::Braun)]
        route: RouteArg,
        /// Localize the segal route at this prime.
        #[arg(long, value_parser = parse_nat)]
        prime: Option<Nat>,
        /// Truncation of the Pontryagin ring for the khorami route.
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Compare every available route over a range of twists.
    Verify {
        #[arg(long = "group", required = true, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long)]
        h: HRange,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Print every row in text mode, not just mismatches.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
        #[arg(long, default_value_t = 4096)]
        chunk: u64,
    },
    /// Tabulate c(G, h).
    Table {
        #[arg(long, required = true, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long)]
        h: HRange,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long, default_value_t = 4096)]
        chunk: u64,
    },
    /// List the built-in fibrations.
    Catalog {
        /// Print the catalog as JSON, in the form `run-spec` reads.
        #[arg(long)]
        json: bool,
    },
    /// Run the spectral sequences of a JSON catalog file.
    RunSpec {
        file: PathBuf,
        #[arg(long, value_parser = parse_nat)]
        h: Nat,
        /// Only the fibration with this name.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_parser = parse_nat)]
        prime: Option<Nat>,
        /// Print every page, not just the assembled result.
        #[arg(long)]
        pages: bool,
    },
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.replace('_', "")
        .parse::<BigUint>()
        .map_err(|_| format!("`{s}` is not a natural number"))
}

fn group(name: &str) -> Result<GroupId, Failure> {
    Ok(parse_group(name)?)
}

fn order(
    g: GroupId,
    h: &Nat,
    route: RouteArg,
    prime: Option<&Nat>,
    trunc: usize,
) -> Result<KResult, Failure> {
    if prime.is_some() && route != RouteArg::Segal {
        return Err(Failure::Usage(
            "--prime only applies to --route segal".into(),
        ));
    }
    Ok(match route {
        RouteArg::Braun => closed_form(&g, h)?,
        RouteArg::Douglas => {
            if !g.is_simply_connected() {
                return Err(Failure::OutOfScope(format!("no Douglas formula for {g}")));
            }
            closedform::assemble_douglas(&g, h)?
        }
        RouteArg::Segal => segal::k_orders_via(&segal::spec_for(&g)?, &g, h, prime)?,
        RouteArg::Khorami => {
            if g != GroupId::a(1)? {
                return Err(Failure::OutOfScope(format!(
                    "the khorami route covers su2 only, not {g}"
                )));
            }
            KResult {
                group: g,
                h: h.clone(),
                even: khorami::tensor_over_r(h, trunc)?,
                odd: AbGroup::trivial(),
                route: Route::Khorami,
            }
        }
    })
}

fn json_line<W: Write, T: serde::Serialize>(out: &mut W, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(anyhow::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn print_spec(out: &mut impl Write, spec: &FibrationSpec) -> io::Result<()> {
    writeln!(
        out,
        "{}: {} -> {} -> {} ({} rules)",
        spec.name,
        spec.fiber,
        spec.total,
        spec.base,
        spec.rules.len()
    )
}

fn run_spec(
    out: &mut impl Write,
    spec: &FibrationSpec,
    h: &Nat,
    prime: Option<&Nat>,
    pages: bool,
) -> Result<(), Failure> {
    if pages {
        let primes: Vec<Nat> = match prime {
            Some(p) => vec![p.clone()],
            None => arith::factorize(h)
                .map_err(|e| Failure::Usage(e.to_string()))?
                .into_iter()
                .map(|(p, _)| p)
                .collect(),
        };
        for p in primes {
            for page in segal::run_pages(spec, h, &p)? {
                let cells: Vec<String> = page
                    .entries()
                    .map(|((c, q), g)| format!("({c},{q})={g}"))
                    .collect();
                let cells = if cells.is_empty() {
                    "0".to_string()
                } else {
                    cells.join(" ")
                };
                writeln!(out, "{} p={p} E^{}: {cells}", spec.name, page.page)?;
            }
        }
    }
    let k = segal::k_orders_via(spec, &spec.total, h, prime)?;
    writeln!(out, "{}: {k}", spec.name)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    twistk_cli::configure_threads()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Order {
            group: name,
            h,
            route,
            prime,
            trunc,
            format,
        } => {
            let k = order(group(&name)?, &h, route, prime.as_ref(), trunc)?;
            match format {
                OutputFormat::Text => {
                    writeln!(out, "{k}")?;
                    writeln!(out, "route: {}", k.route)?;
                }
                OutputFormat::Json => json_line(&mut out, &k)?,
            }
        }
        Command::Verify {
            groups,
            h,
            format,
            all,
            trunc,
            chunk,
        } => {
            let groups = groups
                .iter()
                .map(|g| group(g))
                .collect::<Result<Vec<_>, _>>()?;
            let v = verify(&groups, h, trunc, chunk)?;
            match format {
                OutputFormat::Json => {
                    for row in &v.rows {
                        json_line(&mut out, row)?;
                    }
                }
                OutputFormat::Text => {
                    for row in &v.rows {
                        if !row.agree {
                            writeln!(out, "MISMATCH {}", row.summary())?;
                            for line in row.diagnostics() {
                                writeln!(out, "{line}")?;
                            }
                        } else if all {
                            writeln!(out, "ok {}", row.summary())?;
                        }
                    }
                }
            }
            let bad = v.mismatches().count();
            let names: Vec<String> = groups.iter().map(ToString::to_string).collect();
            eprintln!(
                "verified {} rows for {} over h in {h}: {} mismatches, {} skipped (out of scope)",
                v.rows.len(),
                names.join(","),
                bad,
                v.skipped.len()
            );
            out.flush()?;
            if bad > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Table {
            groups,
            h,
            format,
            chunk,
        } => {
            let groups = groups
                .iter()
                .map(|g| group(g))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = table_rows(&groups, h, chunk)?;
            write_table(&rows, format, &mut out)?;
        }
        Command::Catalog { json } => {
            let specs = segal::builtin();
            if json {
                writeln!(out, "{}", segal::catalog_to_json(&specs))?;
            } else {
                for spec in &specs {
                    print_spec(&mut out, spec)?;
                }
            }
        }
        Command::RunSpec {
            file,
            h,
            name,
            prime,
            pages,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let specs = segal::catalog_from_json(&text)?;
            let selected: Vec<&FibrationSpec> = specs
                .iter()
                .filter(|s| name.as_ref().is_none_or(|n| *n == s.name))
                .collect();
            if selected.is_empty() {
                return Err(Failure::Usage(
                    "no matching fibration in the catalog".into(),
                ));
            }
            for spec in selected {
                run_spec(&mut out, spec, &h, prime.as_ref(), pages)?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("twistk: {failure}");
            failure.exit_code()
        }
    }
}
