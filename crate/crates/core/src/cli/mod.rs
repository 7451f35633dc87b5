//! Command-line front end of the `hypvis` binary.

pub mod figure;
pub mod literal;
pub mod output;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use crate::distortion::{holder_rhs, lambda_k};
use crate::geom::chordal;
use crate::hyperbolic::{rho_half_plane, HalfPlanePair};
use crate::visual_angle::{
    catalog_auto, catalog_rows, definitions, visual_angle, visual_angle_bounds,
};
use literal::{parse_complex, parse_real, LiteralError};
use output::{
    csv_table, fmt_sig, num, object, opt_num, opt_point, point, pretty, render_record, Format,
};
use verify::{default_tolerances, SuiteReport, VerifyConfig};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for a failed verification.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for usage, parse and domain errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hypvis",
    version,
    about = "Visual angle metric of the upper half-plane"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "HYPVIS_FORMAT",
        default_value = "text"
    )]
    pub format: Format,

    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Number of random samples per check.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// Tolerance override `SUITE.CHECK=VALUE`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hyperbolic distance, visual angle, chordal distance and angle bounds.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Construction points with closed-form and definitional values.
    Points {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Runs a verification suite.
    Verify {
        /// metrics, catalog, collinearity, bounds, oracle, distortion, holder or all.
        suite: String,
    },
    /// Exports the data of a construction figure.
    Figure {
        /// fig3, fig4, fig5, fig6 or fig7.
        name: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Real point the chords of fig7 pass through (defaults to d).
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Distortion constant and bound for a given K and visual angle.
    Holder {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
}

/// Errors reported with exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] LiteralError),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown figure '{0}'; expected one of fig3, fig4, fig5, fig6, fig7")]
    UnknownFigure(String),
    #[error("malformed tolerance override '{0}'; expected NAME=VALUE")]
    MalformedTolerance(String),
    #[error("unknown tolerance name '{0}'")]
    UnknownTolerance(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
}

/// Result of one invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pair(a: &str, b: &str) -> Result<HalfPlanePair, CliError> {
    Ok(HalfPlanePair::new(parse_complex(a)?, parse_complex(b)?)?)
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Dist { a, b } => Ok((EXIT_OK, render_record(&dist(&pair(a, b)?)?, format))),
        Command::Points { a, b } => Ok((EXIT_OK, points(&pair(a, b)?, format)?)),
        Command::Holder { k, v } => Ok((
            EXIT_OK,
            render_record(&holder(parse_real(k)?, parse_real(v)?)?, format),
        )),
        Command::Figure { name, a, b, k } => {
            let p = pair(a, b)?;
            let k = k.as_deref().map(parse_real).transpose()?;
            let elems = figure::figure(name, &p, k)
                .ok_or_else(|| CliError::UnknownFigure(name.clone()))??;
            Ok((EXIT_OK, render_figure(&elems, format)))
        }
        Command::Verify { suite } => {
            let config = VerifyConfig {
                seed: cli.seed,
                samples: cli.samples as usize,
                tolerances: tolerances(&cli.tol)?,
            };
            let reports =
                verify::run(suite, &config).ok_or_else(|| CliError::UnknownSuite(suite.clone()))?;
            let pass = reports.iter().all(|r| r.pass);
            let code = if pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((code, render_verify(&reports, &config, pass, format)))
        }
    }
}

fn tolerances(items: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let known = default_tolerances();
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::MalformedTolerance(item.clone()))?;
        if !known.contains_key(name) {
            return Err(CliError::UnknownTolerance(name.to_string()));
        }
        out.insert(name.to_string(), parse_real(value)?);
    }
    Ok(out)
}

/// Record printed by `dist`; a coincident pair yields zeros.
pub fn dist(p: &HalfPlanePair) -> Result<Value, CliError> {
    let (a, b) = (p.a(), p.b());
    let chord = chordal(a, b);
    if p.is_degenerate() {
        let angle = object([
            ("value", num(0.0)),
            ("branch", Value::from("coincident")),
            ("attaining_point", num(a.re())),
            ("T", num(0.0)),
            ("t", num(0.0)),
        ]);
        return Ok(object([
            ("a", point(a)),
            ("b", point(b)),
            ("rho", num(0.0)),
            ("visual_angle", angle),
            ("chordal", num(chord)),
            ("bounds", object([("lower", num(0.0)), ("upper", num(0.0))])),
        ]));
    }
    let v = visual_angle(p)?;
    let (lower, upper) = visual_angle_bounds(p)?;
    let angle = object([
        ("value", num(v.angle)),
        ("branch", Value::from(v.branch.name())),
        ("attaining_point", num(v.attaining_point.x())),
        ("T", num(v.big_t)),
        ("t", num(v.t)),
    ]);
    Ok(object([
        ("a", point(a)),
        ("b", point(b)),
        ("rho", num(rho_half_plane(p))),
        ("visual_angle", angle),
        ("chordal", num(chord)),
        (
            "bounds",
            object([("lower", num(lower)), ("upper", num(upper))]),
        ),
    ]))
}

/// Catalog keyed by field name with `{closed_form, definitional, residual}` entries.
pub fn points_json(p: &HalfPlanePair) -> Result<Value, CliError> {
    let rows = catalog_rows(&catalog_auto(p)?, &definitions(p)?);
    let mut map = Map::new();
    for row in rows.iter().filter(|r| r.closed_form.is_some()) {
        map.insert(
            row.field.name().to_string(),
            object([
                ("closed_form", opt_point(row.closed_form)),
                ("definitional", opt_point(row.definitional)),
                ("residual", opt_num(row.residual)),
            ]),
        );
    }
    Ok(Value::Object(map))
}

fn points(p: &HalfPlanePair, format: Format) -> Result<String, CliError> {
    let json = points_json(p)?;
    if format == Format::Json {
        return Ok(pretty(&json));
    }
    let digits = if format == Format::Csv {
        output::MACHINE_DIGITS
    } else {
        output::TEXT_DIGITS
    };
    let cell = |v: &Value| output::scalar(v, digits);
    let part = |v: &Value, k: usize| v.as_array().map_or(String::new(), |a| cell(&a[k]));
    let rows: Vec<Vec<String>> = json
        .as_object()
        .expect("object")
        .iter()
        .map(|(k, e)| {
            let (c, d) = (&e["closed_form"], &e["definitional"]);
            vec![
                k.clone(),
                part(c, 0),
                part(c, 1),
                part(d, 0),
                part(d, 1),
                cell(&e["residual"]),
            ]
        })
        .collect();
    let header = [
        "field",
        "closed_re",
        "closed_im",
        "definitional_re",
        "definitional_im",
        "residual",
    ];
    if format == Format::Csv {
        return Ok(csv_table(&header, &rows));
    }
    Ok(text_table(&header, &rows))
}

fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Record printed by `holder`.
pub fn holder(k: f64, v: f64) -> Result<Value, CliError> {
    let bound = holder_rhs(k, v)?;
    let lambda = lambda_k(k)?;
    let mut record = object([
        ("K", num(k)),
        ("v", num(v)),
        ("lambda", num(lambda)),
        ("bound", num(bound)),
    ]);
    if k == 1.0 {
        record["sharp"] = num(v.tan());
    }
    Ok(record)
}

fn render_figure(elems: &[figure::Element], format: Format) -> String {
    let digits = if format == Format::Csv {
        output::MACHINE_DIGITS
    } else {
        output::TEXT_DIGITS
    };
    let cell = |x: Option<f64>| x.map_or(String::new(), |x| fmt_sig(x, digits));
    match format {
        Format::Json => {
            let items = elems
                .iter()
                .map(|e| {
                    object([
                        ("kind", Value::from(e.kind.name())),
                        ("label", Value::from(e.label.clone())),
                        ("x1", num(e.x1)),
                        ("y1", num(e.y1)),
                        ("x2", opt_num(e.x2)),
                        ("y2", opt_num(e.y2)),
                    ])
                })
                .collect();
            pretty(&Value::Array(items))
        }
        _ => {
            let rows: Vec<Vec<String>> = elems
                .iter()
                .map(|e| {
                    vec![
                        e.kind.name().to_string(),
                        e.label.clone(),
                        cell(Some(e.x1)),
                        cell(Some(e.y1)),
                        cell(e.x2),
                        cell(e.y2),
                    ]
                })
                .collect();
            let header = ["kind", "label", "x1", "y1", "x2/radius", "y2"];
            if format == Format::Csv {
                csv_table(&header, &rows)
            } else {
                text_table(&header, &rows)
            }
        }
    }
}

fn render_verify(
    reports: &[SuiteReport],
    config: &VerifyConfig,
    pass: bool,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let suites = serde_json::to_value(reports).expect("serializable report");
            pretty(&object([
                ("seed", Value::from(config.seed)),
                ("samples", Value::from(config.samples)),
                ("pass", Value::from(pass)),
                ("suites", round_numbers(suites)),
            ]))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(|c| {
                        vec![
                            r.suite.clone(),
                            c.name.clone(),
                            c.cases.to_string(),
                            fmt_sig(c.max_residual, output::MACHINE_DIGITS),
                            fmt_sig(c.tolerance, output::MACHINE_DIGITS),
                            c.pass.to_string(),
                            c.worst_case.clone(),
                        ]
                    })
                })
                .collect();
            let header = [
                "suite",
                "check",
                "cases",
                "max_residual",
                "tolerance",
                "pass",
                "worst_case",
            ];
            csv_table(&header, &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                for c in &r.checks {
                    out.push_str(&format!(
                        "{} {}.{} cases={} max_residual={} tolerance={} worst: {}\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        r.suite,
                        c.name,
                        c.cases,
                        fmt_sig(c.max_residual, output::TEXT_DIGITS),
                        fmt_sig(c.tolerance, output::TEXT_DIGITS),
                        c.worst_case,
                    ));
                }
            }
            out.push_str(&format!(
                "{} seed={} samples={}\n",
                if pass { "PASS" } else { "FAIL" },
                config.seed,
                config.samples
            ));
            out
        }
    }
}

/// Rounds every float in `v` to machine precision; infinite values become `null`.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64")),
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, x)| (k, round_numbers(x)))
                .collect(),
        ),
        other => other,
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}
