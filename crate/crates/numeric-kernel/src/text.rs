//! Shared series text format: `c0 + c1*q + c2*q^2 + O(q^N)`.

use num_traits::{One, Signed, Zero};

use crate::rational::{parse_rational, Rational};
use crate::SeriesError;

fn power(var: char, e: i64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// `coeffs[i]` multiplies `var^(start + i)`; `big_o` is the exponent in O(..).
pub(crate) fn format_series(coeffs: &[Rational], start: i64, var: char, big_o: i64) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = start + i as i64;
        let mag = c.abs();
        let body = if e == 0 {
            mag.to_string()
        } else if mag.is_one() {
            power(var, e)
        } else {
            format!("{mag}*{}", power(var, e))
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    let o = format!("O({})", if big_o == 0 { "1".to_string() } else { power(var, big_o) });
    if out.is_empty() {
        o
    } else {
        format!("{out} + {o}")
    }
}

fn parse_power(s: &str, var: char) -> Result<i64, SeriesError> {
    let bad = || SeriesError::Parse(format!("invalid power `{s}`"));
    let rest = s.strip_prefix(var).ok_or_else(bad)?;
    if rest.is_empty() {
        return Ok(1);
    }
    let digits = rest.strip_prefix('^').ok_or_else(bad)?;
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    digits.parse().map_err(|_| bad())
}

/// Returns the (exponent, coefficient) terms and the O(..) exponent if present.
pub(crate) fn parse_series(
    s: &str,
    var: char,
) -> Result<(Vec<(i64, Rational)>, Option<i64>), SeriesError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(SeriesError::Parse("empty series".into()));
    }
    // Split at top-level signs; a '-' right after '^' belongs to an exponent.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') && prev.is_some() {
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    pieces.push((neg, cur));

    let mut terms = Vec::new();
    let mut big_o = None;
    for (neg, body) in pieces {
        if body.is_empty() {
            return Err(SeriesError::Parse(format!("empty term in `{s}`")));
        }
        if let Some(inner) = body.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
            if neg || big_o.is_some() {
                return Err(SeriesError::Parse("malformed O(..) term".into()));
            }
            big_o = Some(if inner == "1" { 0 } else { parse_power(inner, var)? });
            continue;
        }
        if big_o.is_some() {
            return Err(SeriesError::Parse("terms after O(..)".into()));
        }
        let (coef, exp) = if body.starts_with(var) {
            (Rational::one(), parse_power(&body, var)?)
        } else if let Some((c, p)) = body.split_once('*') {
            (parse_rational(c)?, parse_power(p, var)?)
        } else {
            (parse_rational(&body)?, 0)
        };
        terms.push((exp, if neg { -coef } else { coef }));
    }
    Ok((terms, big_o))
}
