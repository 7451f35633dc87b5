//! Output formats and numeric rendering.

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::geom::ComplexPoint;

/// Significant digits for machine-readable output.
pub const MACHINE_DIGITS: usize = 15;
/// Significant digits for human-readable output.
pub const TEXT_DIGITS: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// `%g`-style rendering with `digits` significant digits and trailing zeros removed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number rounded to machine precision; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x, MACHINE_DIGITS)).map_or(Value::Null, Value::Number)
}

/// `[re, im]`.
pub fn point(z: ComplexPoint) -> Value {
    Value::Array(vec![num(z.re()), num(z.im())])
}

pub fn opt_point(z: Option<ComplexPoint>) -> Value {
    z.map_or(Value::Null, point)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

/// Renders a scalar JSON value with `digits` significant digits.
pub fn scalar(v: &Value, digits: usize) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n
            .as_f64()
            .map_or_else(|| n.to_string(), |x| fmt_sig(x, digits)),
        Value::String(s) => s.clone(),
        Value::Array(items) if is_point(items) => complex_text(items, digits),
        Value::Array(items) => items
            .iter()
            .map(|x| scalar(x, digits))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Object(_) => v.to_string(),
    }
}

fn is_point(items: &[Value]) -> bool {
    items.len() == 2 && items.iter().all(Value::is_number)
}

fn complex_text(items: &[Value], digits: usize) -> String {
    let re = items[0].as_f64().unwrap_or(f64::NAN);
    let im = items[1].as_f64().unwrap_or(f64::NAN);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!(
        "{}{}{}i",
        fmt_sig(re, digits),
        sign,
        fmt_sig(im.abs(), digits)
    )
}

/// Indented `key: value` lines.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}

fn text_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || (x.is_array() && !x.as_array().is_some_and(|a| is_point(a))) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text_into(out, x, depth + 1);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x, TEXT_DIGITS)));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_object() {
                    text_into(out, x, depth);
                    out.push('\n');
                } else {
                    out.push_str(&format!("{pad}{}\n", scalar(x, TEXT_DIGITS)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v, TEXT_DIGITS))),
    }
}

/// Flattens nested objects into `key,value` rows with dotted keys; points split into
/// `.re` and `.im`.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    flatten_into(&mut rows, String::new(), v);
    rows
}

fn flatten_into(rows: &mut Vec<(String, String)>, prefix: String, v: &Value) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten_into(rows, join(k), x);
            }
        }
        Value::Array(items) if is_point(items) => {
            rows.push((join("re"), scalar(&items[0], MACHINE_DIGITS)));
            rows.push((join("im"), scalar(&items[1], MACHINE_DIGITS)));
        }
        _ => rows.push((prefix, scalar(v, MACHINE_DIGITS))),
    }
}

/// CSV document with a header row.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Generic record rendering used by commands without a dedicated table layout.
pub fn render_record(v: &Value, format: Format) -> String {
    match format {
        Format::Json => pretty(v),
        Format::Text => render_text(v),
        Format::Csv => {
            let rows: Vec<Vec<String>> = flatten(v).into_iter().map(|(k, x)| vec![k, x]).collect();
            csv_table(&["key", "value"], &rows)
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// Object from ordered key–value pairs.
pub fn object<const N: usize>(entries: [(&str, Value); N]) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
