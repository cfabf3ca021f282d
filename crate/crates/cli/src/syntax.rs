//! Command-line scalar syntax: `a`, `a+bi`, `a+bi+cj+dk`.
//!
//! Terms appear in the order real, `i`, `j`, `k`, each at most once, with no
//! whitespace. A `j` or `k` term makes the value a quaternion; otherwise it
//! is complex unless a quaternion is requested. A unit may stand alone
//! (`1+i`), and omitted terms are zero.

use hyperchar_core::{Kind, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("empty scalar")]
    Empty,
    #[error("whitespace is not allowed in {0:?}")]
    Whitespace(String),
    #[error("malformed number in {0:?}")]
    Number(String),
    #[error("term `{unit}` out of order or repeated in {input:?}")]
    Order { unit: char, input: String },
    #[error("{0:?} has j or k terms but a complex value was requested")]
    NotComplex(String),
    #[error("{0:?} is not finite")]
    NotFinite(String),
}

const UNITS: [char; 4] = ['1', 'i', 'j', 'k'];

/// Parses with the kind inferred from the terms present.
pub fn parse_scalar(input: &str) -> Result<Scalar, SyntaxError> {
    parse(input, None)
}

/// Parses as the given kind; bare reals and `a+bi` promote to quaternions.
pub fn parse_scalar_as(input: &str, kind: Kind) -> Result<Scalar, SyntaxError> {
    parse(input, Some(kind))
}

/// Comma-separated list, all of one kind: quaternion if any entry needs it.
pub fn parse_scalar_list(input: &str, kind: Option<Kind>) -> Result<Vec<Scalar>, SyntaxError> {
    let items: Vec<&str> = input.split(',').collect();
    let kind = match kind {
        Some(k) => k,
        None => {
            let mut k = Kind::Complex;
            for item in &items {
                if parse_scalar(item)?.kind() == Kind::Quaternion {
                    k = Kind::Quaternion;
                }
            }
            k
        }
    };
    items.iter().map(|item| parse_scalar_as(item, kind)).collect()
}

fn parse(input: &str, kind: Option<Kind>) -> Result<Scalar, SyntaxError> {
    if input.is_empty() {
        return Err(SyntaxError::Empty);
    }
    if input.chars().any(char::is_whitespace) {
        return Err(SyntaxError::Whitespace(input.to_string()));
    }
    let mut parts = [0.0; 4];
    let mut next_slot = 0;
    for (coefficient, unit) in terms(input)? {
        let slot = UNITS.iter().position(|&u| u == unit).expect("terms yields known units");
        if slot < next_slot {
            return Err(SyntaxError::Order { unit, input: input.to_string() });
        }
        parts[slot] = coefficient;
        next_slot = slot + 1;
    }
    if parts.iter().any(|x| !x.is_finite()) {
        return Err(SyntaxError::NotFinite(input.to_string()));
    }
    let needs_quaternion = next_slot > 2;
    match (kind, needs_quaternion) {
        (Some(Kind::Complex), true) => Err(SyntaxError::NotComplex(input.to_string())),
        (Some(Kind::Quaternion), _) | (None, true) => Ok(Scalar::quaternion(parts[0], parts[1], parts[2], parts[3])),
        _ => Ok(Scalar::complex(parts[0], parts[1])),
    }
}

/// Splits into signed `(coefficient, unit)` terms, `'1'` marking the real part.
fn terms(input: &str) -> Result<Vec<(f64, char)>, SyntaxError> {
    let bad = || SyntaxError::Number(input.to_string());
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        if matches!(bytes[pos], b'+' | b'-') {
            pos += 1;
        } else if start != 0 {
            return Err(bad());
        }
        // Mantissa digits and dot, then an optional signed exponent.
        let digits_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
            pos += 1;
        }
        let has_digits = pos > digits_start;
        if has_digits && pos < bytes.len() && matches!(bytes[pos], b'e' | b'E') {
            pos += 1;
            if pos < bytes.len() && matches!(bytes[pos], b'+' | b'-') {
                pos += 1;
            }
            let exp_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == exp_start {
                return Err(bad());
            }
        }
        let number = &input[start..pos];
        let unit = match bytes.get(pos) {
            Some(b'i') => 'i',
            Some(b'j') => 'j',
            Some(b'k') => 'k',
            Some(b'+' | b'-') | None => '1',
            Some(_) => return Err(bad()),
        };
        if unit != '1' {
            pos += 1;
        }
        let coefficient = if has_digits {
            number.parse::<f64>().map_err(|_| bad())?
        } else if unit == '1' {
            return Err(bad());
        } else if number.starts_with('-') {
            -1.0
        } else {
            1.0
        };
        out.push((coefficient, unit));
    }
    Ok(out)
}
