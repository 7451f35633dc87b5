//! Complex literals of the form `[-]x[+|-]yi` with decimal or fraction components.

use crate::geom::ComplexPoint;

/// Error message for an unparseable literal.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot parse '{input}': {reason}")]
pub struct LiteralError {
    pub input: String,
    pub reason: &'static str,
}

fn fail<T>(input: &str, reason: &'static str) -> Result<T, LiteralError> {
    Err(LiteralError {
        input: input.to_string(),
        reason,
    })
}

/// Parses a real component: a decimal (`-1.25`, `3e-4`) or a fraction (`-3/4`).
pub fn parse_real(input: &str) -> Result<f64, LiteralError> {
    let s = input.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let (Ok(n), Ok(d)) = (parse_decimal(num), parse_decimal(den)) else {
                return fail(input, "malformed fraction");
            };
            if d == 0.0 {
                return fail(input, "zero denominator");
            }
            n / d
        }
        None => match parse_decimal(s) {
            Ok(x) => x,
            Err(()) => return fail(input, "malformed number"),
        },
    };
    if value.is_finite() {
        Ok(value)
    } else {
        fail(input, "value is not finite")
    }
}

fn parse_decimal(s: &str) -> Result<f64, ()> {
    let s = s.trim();
    let digits = s.trim_start_matches(['+', '-']);
    let plain = !digits.is_empty()
        && digits.starts_with(|c: char| c.is_ascii_digit() || c == '.')
        && digits
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if !plain || s.len() - digits.len() > 1 {
        return Err(());
    }
    s.parse().map_err(|_| ())
}

/// Coefficient of `i`; an empty or bare sign coefficient means `±1`.
fn parse_coefficient(input: &str, s: &str) -> Result<f64, LiteralError> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s).or_else(|_| fail(input, "malformed imaginary part")),
    }
}

/// Parses `x`, `yi`, `x+yi` or `x-yi`; `i` alone is `0+1i`.
pub fn parse_complex(input: &str) -> Result<ComplexPoint, LiteralError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return fail(input, "empty literal");
    }
    let Some(body) = s.strip_suffix('i') else {
        return ComplexPoint::real(parse_real(&s)?).or_else(|_| fail(input, "value is not finite"));
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/'));
    let (re, im) = match split {
        Some(k) => (
            parse_real(&body[..k])?,
            parse_coefficient(input, &body[k..])?,
        ),
        None => (0.0, parse_coefficient(input, body)?),
    };
    ComplexPoint::new(re, im).or_else(|_| fail(input, "value is not finite"))
}
