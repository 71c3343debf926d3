//! Command-line front end. [`run`] parses arguments, writes results to `out`
//! and diagnostics to `err`, and returns the process exit code.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::QPolynomial;
use crate::bijection::{bij_g, bij_g_inv, bij_h, bij_h_inv, transport, InsertionEncoding};
use crate::ddescent::{triangle_by_recurrence, DistTriangle};
use crate::dist::analytic::{
    analytic_compare, infinite_sum_eval, peak_series_diagnostic, AnalyticFn,
};
use crate::dist::gf::{builder, identity_kind, series_identity_mismatch, BUILDER_NAMES};
use crate::dist::{average, dist_with, DistError, MethodTag};
use crate::oracle::Oracle;
use crate::perm::{parse_permutation, Parsed, StatKind, Statistic};
use crate::verify::{run_suite, Fault, VerifyConfig};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "flatstat",
    version,
    about = "Statistics on flattened permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Des,
    Asc,
    Bigdes,
    Ddes,
    #[value(name = "123")]
    Sub123,
    #[value(name = "321")]
    Sub321,
    Peak,
    Valley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Recurrence,
    Closed,
    Kernel,
    Series,
}

impl From<MethodArg> for MethodTag {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => MethodTag::Brute,
            MethodArg::Recurrence => MethodTag::Recurrence,
            MethodArg::Closed => MethodTag::Closed,
            MethodArg::Kernel => MethodTag::Kernel,
            MethodArg::Series => MethodTag::Series,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    G,
    H,
    GInv,
    HInv,
    Transport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TriangleSource {
    Recurrence,
    Brute,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the standard cycle form and the flattened word.
    Flatten {
        /// One-line word ("7,1,5,6,4,3,2,8") or cycles ("(1 7 2)(3 5 4 6)(8)").
        input: String,
        /// Accept cycles in any order and rotation.
        #[arg(long)]
        lenient: bool,
    },
    /// Distribution of a statistic over S_n as a polynomial in q.
    Dist {
        #[arg(long)]
        stat: StatArg,
        #[arg(long)]
        n: usize,
        /// Threshold for ddes.
        #[arg(long)]
        d: Option<u32>,
        /// Defaults to the first available of recurrence, closed, brute.
        #[arg(long)]
        method: Option<MethodArg>,
        /// Count on the one-line word instead of the flattened word.
        #[arg(long)]
        plain: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run every cross-check suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        d_max: u32,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Joint distribution of d-descents and cycles.
    Ddescent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "recurrence")]
        source: TriangleSource,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Closed-form average of a flattened statistic over S_n.
    Avg {
        #[arg(long)]
        stat: StatArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Apply g, h, their inverses, or the transport map h after g inverse.
    Bijection {
        #[arg(long, value_enum)]
        direction: Direction,
        /// An encoding "0,2;1,1;..." for g and h, otherwise a permutation.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Check a generating-series identity (des, 321, peak, valley) or print
    /// the coefficients of a named series.
    SeriesCheck {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Evaluate H, G123, B123, B321 against their series, an infinite sum
    /// (des, asc, valley) or the peak expansion diagnostic (peak).
    Analytic {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 0.0)]
        x: f64,
        #[arg(long)]
        q: f64,
        /// Size for the infinite sums and the peak diagnostic.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of terms in the peak diagnostic.
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

/// JSON envelope for every `--format json` output.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: Value,
    pub payload: Value,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: e.to_string(),
        }
    }
}

impl From<DistError> for Failure {
    fn from(e: DistError) -> Self {
        let code = match e {
            DistError::MethodUnsupported { .. } | DistError::UnknownName(_) => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn kind_of(stat: StatArg, d: Option<u32>) -> Result<StatKind, Failure> {
    Ok(match stat {
        StatArg::Des => StatKind::Des,
        StatArg::Asc => StatKind::Asc,
        StatArg::Bigdes => StatKind::BigDes,
        StatArg::Ddes => match d {
            Some(d) if d >= 1 => StatKind::DDes(d),
            _ => return Err(Failure::parse("ddes needs --d >= 1")),
        },
        StatArg::Sub123 => StatKind::Sub123,
        StatArg::Sub321 => StatKind::Sub321,
        StatArg::Peak => StatKind::Peak,
        StatArg::Valley => StatKind::Valley,
    })
}

fn envelope(command: Value, payload: Value) -> String {
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        command,
        payload,
    };
    serde_json::to_string_pretty(&record).expect("JSON values serialize")
}

fn poly_text(p: &QPolynomial, format: Format, command: Value) -> String {
    match format {
        Format::Human => p.to_human(),
        Format::Json => envelope(
            command,
            serde_json::to_value(p).expect("polynomial serializes"),
        ),
        Format::Csv => {
            let mut s = String::from("power,coeff\n");
            for (k, c) in p.coeffs().iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            s.trim_end().to_string()
        }
    }
}

fn triangle_json(t: &DistTriangle) -> Value {
    let cells: Vec<Value> = t
        .to_csv()
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            json!({"n": f[0].parse::<u64>().unwrap_or(0), "m": f[1].parse::<u64>().unwrap_or(0),
                   "k": f[2].parse::<u64>().unwrap_or(0), "count": f[3]})
        })
        .collect();
    json!({"d": t.d(), "max_n": t.max_n(), "cells": cells})
}

fn triangle_human(t: &DistTriangle) -> String {
    let mut lines = Vec::new();
    for n in 1..=t.max_n() {
        for m in 0..n {
            if t.marginal(n, m) == 0.into() {
                continue;
            }
            let row: Vec<String> = (0..=n).map(|k| t.get(n, m, k).to_string()).collect();
            lines.push(format!("n={n} m={m}: {}", row.join(" ")));
        }
    }
    lines.join("\n")
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    let oracle = Oracle::from_env();
    match cli.command {
        Command::Flatten { input, lenient } => {
            let parsed = parse_permutation(&input, lenient).map_err(Failure::parse)?;
            Ok(Output::ok(match parsed {
                Parsed::Word(p) => format!("{} / {}", p.standard_cycle_form(), p.flattened()),
                Parsed::Cycles(c) => c.flatten().to_string(),
            }))
        }
        Command::Dist {
            stat,
            n,
            d,
            method,
            plain,
            format,
        } => {
            let kind = kind_of(stat, d)?;
            let st = if plain {
                Statistic::plain(kind)
            } else {
                Statistic::flattened(kind)
            };
            let (g, used) = match method {
                Some(m) => (dist_with(&oracle, st, n, m.into())?, MethodTag::from(m)),
                None => {
                    let mut found = None;
                    for m in [MethodTag::Recurrence, MethodTag::Closed, MethodTag::Brute] {
                        match dist_with(&oracle, st, n, m) {
                            Ok(g) => {
                                found = Some((g, m));
                                break;
                            }
                            Err(DistError::MethodUnsupported { .. }) => continue,
                            Err(e) => return Err(e.into()),
                        }
                    }
                    found.expect("brute force supports every statistic")
                }
            };
            let command = json!({"name": "dist", "stat": st.to_string(), "n": n,
                                 "method": used.name(), "flattened": st.flattened});
            Ok(Output::ok(poly_text(&g, format, command)))
        }
        Command::Verify {
            n_max,
            d_max,
            inject_fault,
            format,
        } => {
            let cfg = VerifyConfig {
                n_max,
                d_max,
                fault: inject_fault.then_some(Fault::PerturbDistribution),
                oracle,
            };
            let report = run_suite(&cfg).map_err(Failure::parse)?;
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            let text = match format {
                Format::Json => {
                    let suites: Vec<Value> = report
                        .summary()
                        .into_iter()
                        .map(|(s, p, t)| json!({"suite": s, "passed": p, "total": t}))
                        .collect();
                    let first = report
                        .first_failure()
                        .map(|r| json!({"suite": r.suite, "case": r.case, "detail": r.detail}));
                    envelope(
                        json!({"name": "verify", "n_max": n_max, "d_max": d_max}),
                        json!({"all_passed": report.all_passed(), "suites": suites,
                               "first_failure": first}),
                    )
                }
                _ => report.to_string().trim_end().to_string(),
            };
            Ok(Output { text, code })
        }
        Command::Ddescent {
            n,
            d,
            source,
            format,
        } => {
            if d == 0 {
                return Err(Failure::parse("--d must be at least 1"));
            }
            let t = match source {
                TriangleSource::Recurrence => {
                    triangle_by_recurrence(n, d).map_err(Failure::parse)?
                }
                TriangleSource::Brute => {
                    oracle.brute_ddescent_table(n, d).map_err(Failure::parse)?
                }
            };
            Ok(Output::ok(match format {
                Format::Csv => t.to_csv().trim_end().to_string(),
                Format::Json => envelope(
                    json!({"name": "ddescent", "n": n, "d": d}),
                    triangle_json(&t),
                ),
                Format::Human => triangle_human(&t),
            }))
        }
        Command::Avg { stat, n, format } => {
            let kind = kind_of(stat, None)?;
            let avg = average(kind, n)?;
            Ok(Output::ok(match format {
                Format::Json => envelope(
                    json!({"name": "avg", "stat": kind.name(), "n": n}),
                    json!({"numerator": avg.numer().to_string(),
                           "denominator": avg.denom().to_string()}),
                ),
                _ => avg.to_string(),
            }))
        }
        Command::Bijection {
            direction,
            input,
            format,
        } => {
            let text = match direction {
                Direction::G | Direction::H => {
                    let e: InsertionEncoding = input.parse().map_err(Failure::parse)?;
                    match direction {
                        Direction::G => bij_g(&e).map_err(Failure::parse)?.to_string(),
                        _ => bij_h(&e).map_err(Failure::parse)?.to_string(),
                    }
                }
                _ => {
                    let p = parse_permutation(&input, true)
                        .map_err(Failure::parse)?
                        .into_permutation();
                    match direction {
                        Direction::GInv => bij_g_inv(&p).to_string(),
                        Direction::HInv => bij_h_inv(&p).to_string(),
                        _ => transport(&p).to_string(),
                    }
                }
            };
            Ok(Output::ok(match format {
                Format::Json => envelope(
                    json!({"name": "bijection", "direction": format!("{direction:?}"),
                           "input": input}),
                    json!({"output": text}),
                ),
                _ => text,
            }))
        }
        Command::SeriesCheck {
            name,
            order,
            format,
        } => {
            if identity_kind(&name).is_ok() {
                let mismatch = series_identity_mismatch(&name, order)?;
                let command = json!({"name": "series-check", "series": name, "order": order});
                let text = match format {
                    Format::Json => envelope(
                        command,
                        json!({"holds": mismatch.is_none(), "first_mismatch": mismatch}),
                    ),
                    _ => match mismatch {
                        None => format!("{name} identity holds to order {order}"),
                        Some(m) => format!("{name} identity fails at x^{m}"),
                    },
                };
                let code = if mismatch.is_none() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                };
                Ok(Output { text, code })
            } else if BUILDER_NAMES.contains(&name.as_str()) {
                let series = builder(&name, order)?;
                let coeffs: Vec<String> =
                    (0..=order).map(|m| series.coeff(m).to_string()).collect();
                Ok(Output::ok(match format {
                    Format::Json => envelope(
                        json!({"name": "series-check", "series": name, "order": order}),
                        json!({"coeffs": coeffs}),
                    ),
                    Format::Csv => {
                        let rows: Vec<String> = coeffs
                            .iter()
                            .enumerate()
                            .map(|(m, c)| format!("{m},{c}"))
                            .collect();
                        format!("power,coeff\n{}", rows.join("\n"))
                    }
                    Format::Human => coeffs
                        .iter()
                        .enumerate()
                        .map(|(m, c)| format!("x^{m}: {c}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                }))
            } else {
                Err(DistError::UnknownName(name).into())
            }
        }
        Command::Analytic {
            name,
            x,
            q,
            n,
            terms,
            format,
        } => {
            let command = json!({"name": "analytic", "function": name, "x": x, "q": q, "n": n});
            let (human, payload) = match name.as_str() {
                "des" | "asc" | "valley" => {
                    let s = infinite_sum_eval(&name, n, q)?;
                    (
                        format!(
                            "{} (terms {}, tail <= {:e})",
                            s.value, s.terms, s.tail_bound
                        ),
                        json!({"value": s.value, "terms": s.terms, "tail_bound": s.tail_bound}),
                    )
                }
                "peak" => {
                    let d = peak_series_diagnostic(n, q, terms)?;
                    let partial: Vec<Value> =
                        d.partial_sums.iter().map(|(j, s)| json!([j, s])).collect();
                    (
                        d.to_string().trim_end().to_string(),
                        json!({"exact": d.exact, "partial_sums": partial}),
                    )
                }
                _ => {
                    let c = analytic_compare(AnalyticFn::parse(&name)?, x, q)?;
                    (
                        format!(
                            "closed {} series {} relative error {:e}",
                            c.closed, c.series, c.relative_error
                        ),
                        json!({"closed": c.closed, "series": c.series,
                               "relative_error": c.relative_error}),
                    )
                }
            };
            Ok(Output::ok(match format {
                Format::Json => envelope(command, payload),
                _ => human,
            }))
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_PARSE
                }
            };
        }
    };
    match execute(cli) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("flatstat").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap().trim_end().to_string(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn flatten_outputs() {
        assert_eq!(
            call(&["flatten", "7,1,5,6,4,3,2,8"]).1,
            "(1 7 2)(3 5 4 6)(8) / 1,7,2,3,5,4,6,8"
        );
        assert_eq!(call(&["flatten", "(1)(2)"]).1, "1,2");
        let (code, _, err) = call(&["flatten", "1,1,2"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("not a permutation"), "{err}");
    }

    #[test]
    fn dist_outputs() {
        assert_eq!(
            call(&["dist", "--stat", "des", "--n", "3", "--method", "closed"]).1,
            "4 + 2*q"
        );
        assert_eq!(
            call(&[
                "dist",
                "--stat",
                "valley",
                "--n",
                "3",
                "--method",
                "recurrence"
            ])
            .1,
            "6"
        );
        assert_eq!(call(&["dist", "--stat", "asc", "--n", "2"]).1, "2*q");
        let (code, _, _) = call(&["dist", "--stat", "123", "--n", "4", "--method", "kernel"]);
        assert_eq!(code, EXIT_UNSUPPORTED);
        assert_eq!(call(&["dist", "--stat", "ddes", "--n", "4"]).0, EXIT_PARSE);
        assert_eq!(call(&["dist", "--stat", "nope", "--n", "4"]).0, EXIT_PARSE);
    }

    #[test]
    fn dist_csv_and_json() {
        let (_, csv, _) = call(&[
            "dist", "--stat", "des", "--n", "3", "--method", "closed", "--format", "csv",
        ]);
        assert_eq!(csv, "power,coeff\n0,4\n1,2");
        let (_, js, _) = call(&["dist", "--stat", "des", "--n", "3", "--format", "json"]);
        let v: Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["payload"]["coeffs"], json!(["4", "2"]));
        let back: QPolynomial = serde_json::from_value(v["payload"].clone()).unwrap();
        assert_eq!(back, QPolynomial::from_i64s(&[4, 2]));
    }

    #[test]
    fn other_commands() {
        assert_eq!(call(&["avg", "--stat", "123", "--n", "100"]).1, "5147/300");
        assert_eq!(
            call(&[
                "bijection",
                "--direction",
                "transport",
                "--input",
                "7,5,1,6,2,4,3,8"
            ])
            .1,
            "7,3,1,6,5,2,4,8"
        );
        assert_eq!(
            call(&[
                "bijection",
                "--direction",
                "g",
                "--input",
                "0,2;1,1;0,3;1,2;0,3;1,1;0,5"
            ])
            .1,
            "(1 7 3)(2 5)(4 6)(8)"
        );
        assert_eq!(
            call(&[
                "bijection",
                "--direction",
                "h-inv",
                "--input",
                "7,3,1,6,5,2,4,8"
            ])
            .1,
            "0,2;1,1;0,3;1,2;0,3;1,1;0,5"
        );
        assert_eq!(
            call(&["series-check", "--name", "peak", "--order", "6"]).0,
            EXIT_OK
        );
        assert_eq!(
            call(&["series-check", "--name", "nope"]).0,
            EXIT_UNSUPPORTED
        );
        assert_eq!(call(&["verify", "--n-max", "1"]).0, EXIT_OK);
        let (code, out, _) = call(&["verify", "--n-max", "3", "--inject-fault"]);
        assert_eq!(code, EXIT_VERIFY_FAILED);
        assert!(out.contains("first failure"), "{out}");
        let (_, csv, _) = call(&["ddescent", "--n", "2", "--d", "1", "--format", "csv"]);
        assert_eq!(csv, "n,m,k,count\n1,0,1,1\n2,0,1,1\n2,0,2,1");
        assert!(
            call(&["analytic", "--name", "H", "--x", "0.1", "--q", "0.5"])
                .1
                .starts_with("closed")
        );
        assert!(
            call(&["analytic", "--name", "peak", "--q", "0.5", "--n", "3"])
                .1
                .contains("exact=")
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
