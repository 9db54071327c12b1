//! `ke-polytope` command line.
//!
//! Exit codes: 0 success (and every verdict KE / every estimate within
//! 3 stderr), 2 a negative verdict or a failed oracle check, 1 runtime error,
//! 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::casedb::{builtin_case, builtin_cases, case_to_json, load_case, CaseRecord};
use crate::criterion::{verdict, Verdict};
use crate::error::{Error, Result};
use crate::oracle::{mc_moments, MIN_SAMPLES};
use crate::report::{self, OracleRow, Report};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "ke-polytope",
    version,
    about = "Exact Kähler–Einstein check for the smooth Fano symmetric varieties of Picard number one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in cases.
    List {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compute polytope, volume, barycenter and verdict.
    Check {
        #[command(flatten)]
        select: Selection,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Draw the moment polytope as SVG.
    Figure {
        #[command(flatten)]
        select: SingleSelection,
        /// Write here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Cross-check exact volumes and barycenters by Monte-Carlo sampling.
    Verify {
        /// Case number; all built-in cases when omitted.
        #[arg(value_parser = clap::value_parser!(u32).range(1..=6), conflicts_with = "case_file")]
        case: Option<u32>,
        #[arg(long, value_name = "PATH")]
        case_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(MIN_SAMPLES..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write case data in the case-file format.
    Export {
        #[command(flatten)]
        select: Selection,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Selection {
    /// Built-in case number.
    #[arg(value_parser = clap::value_parser!(u32).range(1..=6))]
    case: Option<u32>,
    /// Every built-in case.
    #[arg(long)]
    all: bool,
    /// A case described in a JSON file.
    #[arg(long, value_name = "PATH")]
    case_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SingleSelection {
    #[arg(value_parser = clap::value_parser!(u32).range(1..=6))]
    case: Option<u32>,
    #[arg(long, value_name = "PATH")]
    case_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn resolve(case: Option<u32>, all: bool, case_file: Option<&Path>) -> Result<Vec<CaseRecord>> {
    if all {
        return Ok(builtin_cases());
    }
    if let Some(path) = case_file {
        return Ok(vec![load_case(path)?]);
    }
    match case {
        Some(id) => builtin_case(id)
            .map(|c| vec![c])
            .ok_or_else(|| Error::InvalidArgument(format!("no built-in case {id}"))),
        None => Ok(builtin_cases()),
    }
}

/// Applies `f` to every case on its own thread; results keep input order.
fn per_case<T: Send>(
    cases: &[CaseRecord],
    f: impl Fn(&CaseRecord) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|c| s.spawn(|| f(c))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("case worker panicked"))
            .collect()
    })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::List { format } => {
            let cases = builtin_cases();
            let text = match format {
                Format::Table => report::case_list_table(&cases),
                Format::Json => report::case_list_json(&cases),
                Format::Csv => report::case_list_csv(&cases)?,
            };
            emit(out, None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Check { select, format } => {
            let cases = resolve(select.case, select.all, select.case_file.as_deref())?;
            let verdicts: Vec<Verdict> = per_case(&cases, verdict)?;
            let report = Report::new(verdicts);
            let text = match format {
                Format::Table => report.to_table(),
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv()?,
            };
            emit(out, None, &text)?;
            Ok(if report.all_ke {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Figure { select, out: path } => {
            let case = resolve(select.case, false, select.case_file.as_deref())?.remove(0);
            let v = verdict(&case)?;
            emit(out, path.as_deref(), &svg::render(&case, &v)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            case,
            case_file,
            samples,
            seed,
            format,
        } => {
            let cases = resolve(case, false, case_file.as_deref())?;
            let rows: Vec<OracleRow> = per_case(&cases, |c| {
                let v = verdict(c)?;
                let mc = mc_moments(c, samples, seed)?;
                report::oracle_rows(c.id, &v, &mc)
            })?
            .into_iter()
            .flatten()
            .collect();
            let text = match format {
                Format::Table => report::oracle_table(&rows),
                Format::Json => report::oracle_json(&rows),
                Format::Csv => report::oracle_csv(&rows)?,
            };
            emit(out, None, &text)?;
            let ok = rows.iter().all(OracleRow::within_three_sigma);
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Export { select, out: path } => {
            let cases = resolve(select.case, select.all, select.case_file.as_deref())?;
            let text = if select.all {
                let items: Vec<String> = cases.iter().map(case_to_json).collect();
                format!("[\n{}\n]\n", items.join(",\n"))
            } else {
                let mut s = case_to_json(&cases[0]);
                s.push('\n');
                s
            };
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. All output goes to the given writers.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["ke-polytope"];
        full.extend_from_slice(args);
        let code = main_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["check", "9"]).0, EXIT_USAGE);
        assert_eq!(call(&["check", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["check"]).0, EXIT_USAGE);
        assert_eq!(call(&["check", "1", "--all"]).0, EXIT_USAGE);
        assert_eq!(call(&["figure", "9"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--samples", "10"]).0, EXIT_USAGE);
        assert_eq!(call(&["list", "--format", "xml"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_and_version_succeed() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
        let (code, out, _) = call(&["--version"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(report::VERSION));
    }

    #[test]
    fn list_rows() {
        let (code, out, _) = call(&["list"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 7);
        let (_, csv, _) = call(&["list", "--format", "csv"]);
        assert_eq!(csv.lines().count(), 7);
    }

    #[test]
    fn check_one() {
        let (code, out, _) = call(&["check", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("(\"5/4\", \"5/4·√3\")"));
    }

    #[test]
    fn export_round_trips_through_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c2.json");
        let p = path.to_str().unwrap();
        assert_eq!(call(&["export", "2", "--out", p]).0, EXIT_OK);
        let (code, a, _) = call(&["check", "--case-file", p, "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let (_, b, _) = call(&["check", "2", "--format", "json"]);
        assert_eq!(a, b);
    }

    #[test]
    fn missing_case_file_is_runtime_error() {
        let (code, _, err) = call(&["check", "--case-file", "/nonexistent/case.json"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.starts_with("error: "));
    }
}
