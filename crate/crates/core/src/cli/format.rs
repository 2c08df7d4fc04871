//! Set-system file formats and command-line value parsing.
//!
//! Text format: `#` starts a comment line, blank lines are skipped, a line
//! starting with `!ground` lists ground labels (including isolated ones), and
//! every other line is one member given as whitespace-separated labels, with
//! `{}` standing for the empty set. Ground order is the `!ground` labels
//! followed by the remaining labels in order of first appearance.
//!
//! Structured format: `{"ground": [labels], "sets": [[labels]]}`, where
//! `ground` may be omitted.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::{ElementSubset, Rational, SetSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FileFormat {
    Text,
    Json,
}

const GROUND_HEADER: &str = "!ground";
const EMPTY_SET: &str = "{}";

/// Parses either format, guessing from the content when `format` is `None`:
/// a document whose first token is `{"` is structured.
pub fn parse_set_system(input: &str, format: Option<FileFormat>) -> Result<SetSystem> {
    let format = format.unwrap_or_else(|| {
        let mut chars = input.chars().filter(|c| !c.is_whitespace());
        if chars.next() == Some('{') && chars.next() == Some('"') {
            FileFormat::Json
        } else {
            FileFormat::Text
        }
    });
    match format {
        FileFormat::Text => parse_text(input),
        FileFormat::Json => parse_json(input),
    }
}

pub fn parse_text(input: &str) -> Result<SetSystem> {
    let mut ground: Vec<String> = Vec::new();
    let mut sets: Vec<Vec<String>> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        if line.starts_with('!') {
            if tokens.next() != Some(GROUND_HEADER) {
                return Err(Error::InvalidInput(format!(
                    "line {}: unknown directive `{line}`",
                    lineno + 1
                )));
            }
            for label in tokens {
                if ground.iter().any(|g| g == label) {
                    return Err(Error::DuplicateGroundLabel(label.to_string()));
                }
                ground.push(label.to_string());
            }
            continue;
        }
        if line == EMPTY_SET {
            sets.push(Vec::new());
        } else {
            sets.push(tokens.map(str::to_string).collect());
        }
    }
    for set in &sets {
        for label in set {
            if !ground.contains(label) {
                ground.push(label.clone());
            }
        }
    }
    SetSystem::build(ground, sets)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    ground: Option<Vec<String>>,
    sets: Vec<Vec<String>>,
}

pub fn parse_json(input: &str) -> Result<SetSystem> {
    let doc: Document = serde_json::from_str(input)
        .map_err(|e| Error::InvalidInput(format!("structured set system: {e}")))?;
    match doc.ground {
        Some(ground) => SetSystem::build(ground, doc.sets),
        None => SetSystem::from_sets(doc.sets),
    }
}

/// Writes `h` in the given format. Text output always carries a full
/// `!ground` header so that reading it back reproduces the element order.
pub fn write_set_system(h: &SetSystem, format: FileFormat) -> Result<String> {
    match format {
        FileFormat::Json => {
            let mut out = serde_json::to_string_pretty(h).expect("set systems serialise");
            out.push('\n');
            Ok(out)
        }
        FileFormat::Text => {
            for label in h.labels() {
                if label.is_empty()
                    || label.chars().any(char::is_whitespace)
                    || label.starts_with('#')
                    || label.starts_with('!')
                    || label == EMPTY_SET
                {
                    return Err(Error::InvalidInput(format!(
                        "label `{label}` cannot be written in the text format"
                    )));
                }
            }
            let mut out = String::new();
            out.push_str(GROUND_HEADER);
            for label in h.labels() {
                out.push(' ');
                out.push_str(label);
            }
            out.push('\n');
            for member in h.members() {
                if member.is_empty() {
                    out.push_str(EMPTY_SET);
                } else {
                    out.push_str(&h.labels_of(member).join(" "));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// `{a, b}` with element labels.
pub fn show_set(h: &SetSystem, set: &ElementSubset) -> String {
    format!("{{{}}}", h.labels_of(set).join(", "))
}

/// Parses `a/b`, an integer, or a decimal such as `-0.125`, exactly.
pub fn parse_rational(raw: &str) -> Result<Rational> {
    let s = raw.trim();
    let bad = || Error::InvalidInput(format!("`{raw}` is not a rational number"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("`{raw}` has a zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = num_traits::Pow::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Parses a non-negative integer of any size.
pub fn parse_biguint(raw: &str) -> Result<BigUint> {
    BigUint::from_str(raw.trim())
        .map_err(|_| Error::InvalidInput(format!("`{raw}` is not a natural number")))
}

/// Parses a comma- or whitespace-separated label list into a subset.
pub fn parse_subset(h: &SetSystem, raw: &str) -> Result<ElementSubset> {
    h.subset(raw.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()))
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(raw: &str) -> Result<Vec<Rational>> {
    let values: Vec<Rational> = raw
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::InvalidInput("empty list of rationals".into()));
    }
    Ok(values)
}

pub fn is_probability(x: &Rational) -> bool {
    x >= &Rational::zero() && x <= &Rational::one()
}
