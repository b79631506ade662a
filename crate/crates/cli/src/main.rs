//! Command-line front end: sequence tables, the verification suite, b-file
//! export, valuation scans, and the auxiliary Genocchi/Stirling/series dumps.
//!
//! Exit codes are part of the interface: 0 = success / all checks pass,
//! 1 = verification failure (a counterexample was found), 2 = usage or
//! input error. Output uses line feeds only and no locale formatting, so
//! byte-identical runs are byte-identical files.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use halfact::combinatorics::{genocchi_checked, StirlingFirstTable, StirlingSecondTable};
use halfact::engine::{a_closed_form, a_egf, a_recurrence, valuation_scan, ScanRow, Tables};
use halfact::series::{series_f, series_g, series_h};
use halfact::verify::{cross_verify, CheckResult, VerificationReport};
use halfact::{Error, Int, Rat, Series};

#[derive(Parser)]
#[command(
    name = "halfact",
    version,
    about = "Exact computation and verification of a(n) = (n/2) a(n-1) + (n-1)!"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a(0..=max-n) by one method, or by all five with an agreement flag
    Table {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Computation route; `egf` uses max-n as the series order
        #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the cross-verification suite and report each named check
    Verify {
        /// Methods are cross-compared for 0 <= n <= max-n
        #[arg(long, default_value_t = 200)]
        max_n: usize,
        /// Truncation order for the generating-function checks
        #[arg(long, default_value_t = 64)]
        series_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write a(0..=max-n) as an OEIS-style b-file
    Export {
        #[arg(long, default_value_t = 100)]
        max_n: usize,
        /// Output path for the b-file
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare v_p(sum_{k<=n} p^k/k) against the base-p digit sum of n
    Scan {
        /// Prime base of the experiment
        #[arg(long)]
        prime: i64,
        #[arg(long, default_value_t = 100)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print the Genocchi numbers (computed by both algorithms, cross-checked)
    Genocchi {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print a Stirling triangle, rows 0..=max-n
    Stirling {
        /// 1 = signed first kind, 2 = second kind
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print truncated coefficients of one of the named series f, g, h
    Series {
        #[arg(long, value_enum)]
        name: SeriesName,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    All,
    Recurrence,
    Closed,
    GenocchiStirling,
    Reduced,
    Egf,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    /// Human-readable columns
    Table,
    /// Comma-separated with a header row
    Csv,
    /// JSON array of flat objects (big integers as decimal strings)
    Json,
    /// OEIS b-file lines "n value" (integer sequences only)
    Bfile,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum SeriesName {
    /// -2 log(1-x) / (2-x)
    F,
    /// 2x / (e^x + 1)
    G,
    /// log(1-x)
    H,
}

enum CliError {
    /// Exit 1: a verification failure with a concrete counterexample.
    Failure(String),
    /// Exit 2: bad input or an unusable output target.
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::Domain { .. }
            | Error::OutOfRange { .. }
            | Error::NotDyadic(_)
            | Error::ZeroValuation
            | Error::NonUnitDivisor
            | Error::CompositionConstantTerm
            | Error::ExpConstantTerm => CliError::Usage(e.to_string()),
            Error::IntegralityBroken { .. }
            | Error::InexactDivision { .. }
            | Error::ValuationBoundBroken { .. }
            | Error::GenocchiMismatch { .. } => CliError::Failure(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Table {
            max_n,
            method,
            format,
        } => cmd_table(max_n, method, format),
        Command::Verify {
            max_n,
            series_order,
            format,
        } => cmd_verify(max_n, series_order, format),
        Command::Export { max_n, out } => cmd_export(max_n, &out),
        Command::Scan {
            prime,
            max_n,
            format,
        } => cmd_scan(prime, max_n, format),
        Command::Genocchi { max_n, format } => cmd_genocchi(max_n, format),
        Command::Stirling {
            kind,
            max_n,
            format,
        } => cmd_stirling(kind, max_n, format),
        Command::Series {
            name,
            order,
            format,
        } => cmd_series(name, order, format),
    }
}

/// Canonical rational rendering: integers without "/1", sign on the numerator.
fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn print_json(rows: Vec<Value>) {
    println!(
        "{}",
        serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable")
    );
}

fn single_method_values(max_n: usize, method: MethodArg) -> Result<Vec<Int>, CliError> {
    let values = match method {
        MethodArg::Recurrence => a_recurrence(max_n)?.into_iter().map(|r| r.value).collect(),
        MethodArg::Closed => {
            let mut out = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                out.push(a_closed_form(n)?.value);
            }
            out
        }
        MethodArg::GenocchiStirling => {
            let tables = Tables::build(max_n)?;
            let mut out = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                out.push(tables.a_genocchi_stirling(n)?.value);
            }
            out
        }
        MethodArg::Reduced => {
            let tables = Tables::build(max_n)?;
            let mut out = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                out.push(tables.a_reduced(n)?.value);
            }
            out
        }
        MethodArg::Egf => a_egf(max_n)?.into_iter().map(|r| r.value).collect(),
        MethodArg::All => unreachable!("handled by the caller"),
    };
    Ok(values)
}

fn cmd_table(max_n: usize, method: MethodArg, format: Format) -> Result<(), CliError> {
    if method == MethodArg::All {
        if format == Format::Bfile {
            return Err(CliError::Usage(
                "bfile output needs a single-valued sequence; pick one method".to_string(),
            ));
        }
        let columns: Vec<(&str, Vec<Int>)> = [
            ("recurrence", MethodArg::Recurrence),
            ("closed", MethodArg::Closed),
            ("genocchi-stirling", MethodArg::GenocchiStirling),
            ("reduced", MethodArg::Reduced),
            ("egf", MethodArg::Egf),
        ]
        .into_iter()
        .map(|(name, m)| Ok((name, single_method_values(max_n, m)?)))
        .collect::<Result<_, CliError>>()?;

        let agree: Vec<bool> = (0..=max_n)
            .map(|n| columns.iter().all(|(_, v)| v[n] == columns[0].1[n]))
            .collect();

        match format {
            Format::Csv => {
                let names: Vec<&str> = columns.iter().map(|(name, _)| *name).collect();
                println!("n,{},agree", names.join(","));
                for n in 0..=max_n {
                    let vals: Vec<String> = columns.iter().map(|(_, v)| v[n].to_string()).collect();
                    println!("{n},{},{}", vals.join(","), agree[n]);
                }
            }
            Format::Table => {
                for n in 0..=max_n {
                    let vals: Vec<String> = columns.iter().map(|(_, v)| v[n].to_string()).collect();
                    println!(
                        "{n} {} {}",
                        vals.join(" "),
                        if agree[n] { "ok" } else { "MISMATCH" }
                    );
                }
            }
            Format::Json => {
                let rows = (0..=max_n)
                    .map(|n| {
                        let mut obj = serde_json::Map::new();
                        obj.insert("n".into(), json!(n));
                        for (name, v) in &columns {
                            obj.insert((*name).into(), json!(v[n].to_string()));
                        }
                        obj.insert("agree".into(), json!(agree[n]));
                        Value::Object(obj)
                    })
                    .collect();
                print_json(rows);
            }
            Format::Bfile => unreachable!("rejected above"),
        }
        return Ok(());
    }

    let values = single_method_values(max_n, method)?;
    match format {
        Format::Csv => {
            println!("n,a");
            for (n, v) in values.iter().enumerate() {
                println!("{n},{v}");
            }
        }
        Format::Table | Format::Bfile => {
            for (n, v) in values.iter().enumerate() {
                println!("{n} {v}");
            }
        }
        Format::Json => {
            print_json(
                values
                    .iter()
                    .enumerate()
                    .map(|(n, v)| json!({ "n": n, "a": v.to_string() }))
                    .collect(),
            );
        }
    }
    Ok(())
}

fn render_check_line(check: &CheckResult) -> String {
    let status = if check.passed { "pass" } else { "FAIL" };
    let mut line = format!("{status}  {:<28}  {}", check.name, check.range);
    if let Some(ce) = &check.counterexample {
        let _ = write!(
            line,
            "\n      at {}: expected {}, got {}",
            ce.location, ce.expected, ce.actual
        );
    }
    line
}

fn cmd_verify(max_n: usize, series_order: usize, format: Format) -> Result<(), CliError> {
    let report: VerificationReport = cross_verify(max_n, series_order);
    match format {
        Format::Table => {
            for check in &report.checks {
                println!("{}", render_check_line(check));
            }
            let passed = report.checks.iter().filter(|c| c.passed).count();
            println!("{passed}/{} checks passed", report.checks.len());
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable report")
            );
        }
        Format::Csv => {
            println!("check,range,status,location,expected,actual");
            for c in &report.checks {
                let (loc, exp, act) = c
                    .counterexample
                    .as_ref()
                    .map(|ce| (ce.location.clone(), ce.expected.clone(), ce.actual.clone()))
                    .unwrap_or_default();
                println!(
                    "{},{:?},{},{:?},{:?},{:?}",
                    c.name,
                    c.range,
                    if c.passed { "pass" } else { "fail" },
                    loc,
                    exp,
                    act
                );
            }
        }
        Format::Bfile => {
            return Err(CliError::Usage(
                "bfile output applies to integer sequences, not reports".to_string(),
            ));
        }
    }
    if report.passed() {
        Ok(())
    } else {
        let first = report.first_failure().expect("failing report");
        let detail = first
            .counterexample
            .as_ref()
            .map(|ce| {
                format!(
                    " at {}: expected {}, got {}",
                    ce.location, ce.expected, ce.actual
                )
            })
            .unwrap_or_default();
        Err(CliError::Failure(format!("{}{detail}", first.name)))
    }
}

fn cmd_export(max_n: usize, out: &std::path::Path) -> Result<(), CliError> {
    let records = a_recurrence(max_n)?;
    let mut content = String::new();
    for r in &records {
        let _ = writeln!(content, "{} {}", r.n, r.value);
    }
    std::fs::write(out, content)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))
}

fn scan_row_json(row: &ScanRow) -> Value {
    json!({
        "p": row.p.to_string(),
        "n": row.n,
        "valuation": row.valuation,
        "digitsum": row.digit_sum.to_string(),
        "holds": row.holds,
    })
}

fn cmd_scan(prime: i64, max_n: usize, format: Format) -> Result<(), CliError> {
    let rows = valuation_scan(&Int::from(prime), max_n)?;
    match format {
        Format::Csv => {
            println!("n,valuation,digitsum,holds");
            for r in &rows {
                println!("{},{},{},{}", r.n, r.valuation, r.digit_sum, r.holds);
            }
        }
        Format::Table => {
            for r in &rows {
                println!("{} {} {} {}", r.n, r.valuation, r.digit_sum, r.holds);
            }
        }
        Format::Json => print_json(rows.iter().map(scan_row_json).collect()),
        Format::Bfile => {
            return Err(CliError::Usage(
                "bfile output applies to integer sequences, not scan rows".to_string(),
            ));
        }
    }
    Ok(())
}

fn cmd_genocchi(max_n: usize, format: Format) -> Result<(), CliError> {
    let g = genocchi_checked::<Int>(max_n)?;
    match format {
        Format::Csv => {
            println!("n,genocchi");
            for (n, v) in g.values().iter().enumerate() {
                println!("{n},{v}");
            }
        }
        Format::Table | Format::Bfile => {
            for (n, v) in g.values().iter().enumerate() {
                println!("{n} {v}");
            }
        }
        Format::Json => print_json(
            g.values()
                .iter()
                .enumerate()
                .map(|(n, v)| json!({ "n": n, "genocchi": v.to_string() }))
                .collect(),
        ),
    }
    Ok(())
}

fn cmd_stirling(kind: u8, max_n: usize, format: Format) -> Result<(), CliError> {
    let rows: Vec<Vec<Int>> = match kind {
        1 => {
            let t = StirlingFirstTable::<Int>::new(max_n);
            (0..=max_n).map(|n| t.row(n).to_vec()).collect()
        }
        2 => {
            let t = StirlingSecondTable::<Int>::new(max_n);
            (0..=max_n).map(|n| t.row(n).to_vec()).collect()
        }
        _ => unreachable!("clap range-checked"),
    };
    match format {
        Format::Table => {
            for row in rows.iter() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", cells.join(" "));
            }
        }
        Format::Csv => {
            println!("n,k,value");
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    println!("{n},{k},{v}");
                }
            }
        }
        Format::Json => {
            let mut out = Vec::new();
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    out.push(json!({ "n": n, "k": k, "value": v.to_string() }));
                }
            }
            print_json(out);
        }
        Format::Bfile => {
            return Err(CliError::Usage(
                "bfile output applies to integer sequences, not triangles".to_string(),
            ));
        }
    }
    Ok(())
}

fn cmd_series(name: SeriesName, order: usize, format: Format) -> Result<(), CliError> {
    let series: Series = match name {
        SeriesName::F => series_f(order),
        SeriesName::G => series_g(order),
        SeriesName::H => series_h(order),
    };
    match format {
        Format::Csv => {
            println!("j,coefficient");
            for (j, c) in series.coeffs().iter().enumerate() {
                println!("{j},{}", rat_str(c));
            }
        }
        Format::Table => {
            for (j, c) in series.coeffs().iter().enumerate() {
                println!("{j} {}", rat_str(c));
            }
        }
        Format::Json => print_json(
            series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| json!({ "j": j, "coefficient": rat_str(c) }))
                .collect(),
        ),
        Format::Bfile => {
            return Err(CliError::Usage(
                "bfile output applies to integer sequences, not rational coefficients".to_string(),
            ));
        }
    }
    Ok(())
}
