//! Exact parsing of rationals written as `p/q` or as terminating decimals.

use std::str::FromStr;

use cohere_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a rational (expected p/q or a decimal such as 0.25)")]
pub struct BadNumber(pub String);

pub fn parse_rational(text: &str) -> Result<Rational, BadNumber> {
    let bad = || BadNumber(text.to_string());
    let t = text.trim();
    if t.contains('/') {
        let (n, d) = t.split_once('/').ok_or_else(bad)?;
        if !is_integer(n) || !is_integer(d) {
            return Err(bad());
        }
        return Rational::from_str(&format!("{}/{}", n.trim(), d.trim())).map_err(|_| bad());
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{sign}{}{frac}", if int.is_empty() { "0" } else { int });
    let scale = format!("1{}", "0".repeat(frac.len()));
    Rational::from_str(&format!("{digits}/{scale}")).map_err(|_| bad())
}

fn is_integer(s: &str) -> bool {
    let s = s.trim();
    let s = s.strip_prefix('-').unwrap_or(s);
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Comma-separated list of rationals.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, BadNumber> {
    text.split(',').map(parse_rational).collect()
}
