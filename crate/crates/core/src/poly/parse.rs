//! Text syntax for Laurent polynomials: `t^-2 - 3 + t^2`, `1/2*t - 2t^3`.

use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Renders terms given in the order they should appear.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs.is_one();
        match e {
            0 => out.push_str(&format_rational(&abs)),
            _ => {
                if !unit {
                    out.push_str(&format_rational(&abs));
                    if !abs.denom().is_one() {
                        out.push('*');
                    }
                }
                out.push('t');
                if e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Parses a Laurent polynomial in the variable `t`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let chars: Vec<char> = text.chars().collect();
    let mut terms: Vec<(usize, bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut cur_start = 0usize;
    let mut negative = false;
    let mut prev_sig: Option<char> = None;
    for (i, &ch) in chars.iter().enumerate() {
        if ch.is_whitespace() {
            continue;
        }
        if (ch == '+' || ch == '-') && prev_sig != Some('^') {
            if !cur.is_empty() {
                terms.push((cur_start, negative, std::mem::take(&mut cur)));
                negative = false;
            }
            if ch == '-' {
                negative = !negative;
            }
            cur_start = i + 1;
        } else {
            if cur.is_empty() {
                cur_start = i;
            }
            cur.push(ch);
        }
        prev_sig = Some(ch);
    }
    if !cur.is_empty() {
        terms.push((cur_start, negative, cur));
    } else if prev_sig.is_some_and(|p| p == '+' || p == '-') {
        return Err(err(chars.len(), "dangling sign"));
    }
    if terms.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut out = LaurentPoly::zero();
    for (start, neg, body) in terms {
        let (c, e) = parse_term(&body).map_err(|m| err(start + 1, m))?;
        let c = if neg { -c } else { c };
        out = &out + &LaurentPoly::monomial(c, e);
    }
    Ok(out)
}

fn parse_term(body: &str) -> std::result::Result<(Rational, i64), String> {
    let Some(tpos) = body.find('t') else {
        let c = parse_rational(body).ok_or_else(|| format!("malformed number `{body}`"))?;
        return Ok((c, 0));
    };
    let coef_str = body[..tpos].trim_end_matches('*');
    let coef = if coef_str.is_empty() {
        Rational::one()
    } else {
        parse_rational(coef_str).ok_or_else(|| format!("malformed coefficient `{coef_str}`"))?
    };
    let rest = &body[tpos + 1..];
    let exp = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse::<i64>()
            .map_err(|_| format!("malformed exponent `{e}`"))?
    } else {
        return Err(format!("unexpected `{rest}` after t"));
    };
    if coef.is_zero() {
        return Ok((coef, 0));
    }
    Ok((coef, exp))
}
