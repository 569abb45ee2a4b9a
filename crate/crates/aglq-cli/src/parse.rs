//! Input parsing: prime-power recognition and subgroup descriptors.

use aglq_core::{Error, Field, Result, Subgroup, Submodule};

/// Splits q into (p, n) or reports that it is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Parse(format!("{} is not a prime power", q)));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        return Ok((q, 1)); // q itself is prime
    }
    let mut n = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::Parse(format!("{} is not a prime power", q)));
    }
    Ok((p, n))
}

/// Parses `d=<d>;b=<elem>;H=<basis>` into a validated subgroup.
/// The basis is a bracketed, comma-separated list of elements; elements use
/// generator-power form (`g^5`), coefficient form (`[1,0,1]`), or a bare
/// prime-field constant. b defaults to 0 and H to the zero module.
pub fn parse_descriptor(field: &Field, text: &str) -> Result<Subgroup> {
    let mut d: Option<u64> = None;
    let mut b = field.zero();
    let mut h = Submodule::zero(field);
    for part in split_top_level(text, ';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{}'", part)))?;
        match key.trim() {
            "d" => {
                d = Some(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad divisor '{}'", value)))?,
                );
            }
            "b" => b = field.parse_element(value)?,
            "H" => h = parse_basis(field, value)?,
            other => {
                return Err(Error::Parse(format!(
                    "unknown descriptor key '{}' (expected d, b, H)",
                    other
                )))
            }
        }
    }
    let d = d.ok_or_else(|| Error::Parse("descriptor is missing d=<divisor>".into()))?;
    Subgroup::new(field, d, h, b)
}

fn parse_basis(field: &Field, text: &str) -> Result<Submodule> {
    let text = text.trim();
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("basis must be bracketed, got '{}'", text)))?;
    let mut gens = Vec::new();
    for item in split_top_level(inner, ',') {
        let item = item.trim();
        if !item.is_empty() {
            gens.push(field.parse_element(item)?);
        }
    }
    Submodule::span(field, &gens)
}

/// Splits on a separator, ignoring separators nested inside brackets.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}
