//! Text formats: polynomials as `x^4-2` or `[-2,0,0,0,1]`, field elements as
//! `(c0, c1, ..., c_{n-1})` with rational entries like `-3/2`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Rational};

pub fn parse_poly(src: &str) -> Result<IntPoly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s.starts_with('[') {
        return parse_list(&s);
    }
    parse_expr(&s)
}

fn parse_list(s: &str) -> Result<IntPoly> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {s:?}")))?;
    if inner.is_empty() {
        return Ok(IntPoly::zero());
    }
    let coeffs = inner
        .split(',')
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_expr(s: &str) -> Result<IntPoly> {
    let bytes = s.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    let mut any = false;
    while i < bytes.len() {
        let mut sign = BigInt::from(1);
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = BigInt::from(-1);
            }
            i += 1;
        } else if any {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {i} in {s:?}")));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let num = if i > start {
            Some(s[start..i].parse::<BigInt>().expect("digits"))
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            if num.is_none() {
                return Err(Error::Parse(format!("dangling '*' in {s:?}")));
            }
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(Error::Parse(format!("missing exponent in {s:?}")));
                }
                exp = s[es..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            }
        } else if num.is_none() {
            return Err(Error::Parse(format!("unexpected character at offset {i} in {s:?}")));
        }
        let c = num.unwrap_or_else(|| BigInt::from(1)) * sign;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += c;
        any = true;
    }
    Ok(IntPoly::new(coeffs))
}

pub fn parse_rational(t: &str) -> Result<Rational> {
    let t = t.trim();
    let bad = || Error::Parse(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parse `(c0, c1, ...)`; the surrounding parentheses are optional.
pub fn parse_coords(src: &str) -> Result<Vec<Rational>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('(')
        .map(|t| t.strip_suffix(')'))
        .unwrap_or(Some(s))
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
    if inner.trim().is_empty() {
        return Err(Error::Parse("empty coordinate list".into()));
    }
    inner.split(',').map(parse_rational).collect()
}

pub fn format_coords(c: &[Rational]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
