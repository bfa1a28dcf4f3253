//! Text grammars for the command-line surface: polynomials in `z`, maps as
//! `(<poly>)/(<poly>)` or `[a,b,c;d,e,f]`, markings as `(p1,p2,p3;q1,q2)`,
//! weighted configurations, and prime lists.

use crate::fields::{Elem, Field, FieldError};
use crate::projpoly::ProjPoint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid polynomial `{0}`: {1}")]
    Poly(String, String),
    #[error("invalid map literal `{0}`: {1}")]
    Map(String, String),
    #[error("invalid marking literal `{0}`: {1}")]
    Marking(String, String),
    #[error("invalid configuration literal `{0}`: {1}")]
    Config(String, String),
    #[error("invalid prime list `{0}`")]
    Primes(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Split a string at top-level occurrences of `sep` (never inside parens
/// or brackets).
fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            c if c == sep && depth == 0 => {
                parts.push(cur.clone());
                cur.clear();
            }
            c => cur.push(c),
        }
    }
    parts.push(cur);
    parts
}

/// Split into signed terms at top-level `+`/`-` (exponent signs like `e+2`
/// stay inside their term).
fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let chars: Vec<char> = s.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && i > 0 && !matches!(chars[i - 1], 'e' | 'E') => {
                terms.push(cur.clone());
                cur.clear();
                if ch == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(ch),
        }
    }
    terms.push(cur);
    terms.retain(|t| !t.is_empty());
    terms
}

/// Parse a polynomial in `z` of degree at most `max_deg`; coefficients in
/// the field's literal grammar, parenthesized when they contain `+`/`-`.
/// Returns `max_deg + 1` coefficients, highest degree first.
pub fn parse_poly_z(field: &Field, text: &str, max_deg: usize) -> Result<Vec<Elem>, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| ParseError::Poly(text.to_string(), why.to_string());
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs = vec![field.zero(); max_deg + 1];
    for term in split_terms(&compact) {
        let negative = term.starts_with('-');
        let body = term.trim_start_matches('-');
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        // locate the variable at top level
        let mut depth = 0i32;
        let mut zpos = None;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                'z' if depth == 0 => {
                    zpos = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let (coeff_text, power) = match zpos {
            None => (body, 0usize),
            Some(i) => {
                let coeff = body[..i].trim_end_matches('*');
                let rest = &body[i + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent"))?
                };
                (coeff, power)
            }
        };
        if power > max_deg {
            return Err(bad(&format!("degree exceeds {max_deg}")));
        }
        let coeff_text = coeff_text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(coeff_text);
        let coeff = if coeff_text.is_empty() {
            field.one()
        } else {
            field.parse_elem(coeff_text)?
        };
        let coeff = if negative { -&coeff } else { coeff };
        let slot = max_deg - power;
        coeffs[slot] = &coeffs[slot] + &coeff;
    }
    Ok(coeffs)
}

/// Parse a map literal into its six coefficients `(a,b,c,d,e,f)`:
/// either `(<poly>)/(<poly>)` or `[a,b,c;d,e,f]`.
pub fn parse_map_coeffs(field: &Field, text: &str) -> Result<[Elem; 6], ParseError> {
    let s = text.trim();
    let bad = |why: &str| ParseError::Map(text.to_string(), why.to_string());
    if s.starts_with('[') {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected closing bracket"))?;
        let halves = split_top_level(inner, ';');
        if halves.len() != 2 {
            return Err(bad("expected `;` between numerator and denominator"));
        }
        let mut out: Vec<Elem> = Vec::with_capacity(6);
        for half in halves {
            let lits = split_top_level(&half, ',');
            if lits.len() != 3 {
                return Err(bad("each side needs three coefficients"));
            }
            for lit in lits {
                out.push(field.parse_elem(lit.trim())?);
            }
        }
        return Ok(out.try_into().expect("six coefficients"));
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let sides = split_top_level(&compact, '/');
    if sides.len() != 2 {
        return Err(bad("expected `(<poly>)/(<poly>)`"));
    }
    let mut out: Vec<Elem> = Vec::with_capacity(6);
    for side in sides {
        let inner = side
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("each side must be parenthesized"))?;
        out.extend(parse_poly_z(field, inner, 2)?);
    }
    Ok(out.try_into().expect("six coefficients"))
}

/// Parse `(p1,p2,p3;q1,q2)` into five points; `inf` is allowed.
pub fn parse_marking_points(field: &Field, text: &str) -> Result<[ProjPoint; 5], ParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| ParseError::Marking(text.to_string(), why.to_string());
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected outer parentheses"))?;
    let halves = split_top_level(inner, ';');
    if halves.len() != 2 {
        return Err(bad("expected `;` between fixed and critical slots"));
    }
    let fixed = split_top_level(&halves[0], ',');
    let critical = split_top_level(&halves[1], ',');
    if fixed.len() != 3 || critical.len() != 2 {
        return Err(bad("expected three fixed and two critical slots"));
    }
    let mut pts = Vec::with_capacity(5);
    for lit in fixed.iter().chain(critical.iter()) {
        pts.push(ProjPoint::parse(field, lit)?);
    }
    Ok(pts.try_into().expect("five points"))
}

/// Parse `points=(...);weights=(...)`.
pub fn parse_config(field: &Field, text: &str) -> Result<(Vec<ProjPoint>, Vec<u64>), ParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| ParseError::Config(text.to_string(), why.to_string());
    let halves = split_top_level(&s, ';');
    if halves.len() != 2 {
        return Err(bad("expected `points=(...);weights=(...)`"));
    }
    let pts_inner = halves[0]
        .strip_prefix("points=(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected `points=(...)`"))?;
    let ws_inner = halves[1]
        .strip_prefix("weights=(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected `weights=(...)`"))?;
    let mut points = Vec::new();
    for lit in split_top_level(pts_inner, ',') {
        points.push(ProjPoint::parse(field, &lit)?);
    }
    let mut weights = Vec::new();
    for lit in split_top_level(ws_inner, ',') {
        let w: u64 = lit.parse().map_err(|_| bad("weights must be positive integers"))?;
        weights.push(w);
    }
    Ok((points, weights))
}

/// Parse a prime list: comma-separated entries, each either an integer or an
/// inclusive range `a..b` (ranges keep only the primes inside; explicit
/// entries are kept verbatim so the caller can diagnose them).
pub fn parse_primes(text: &str) -> Result<Vec<u64>, ParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ParseError::Primes(text.to_string());
    let mut out: Vec<u64> = Vec::new();
    for item in s.split(',') {
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            for n in a..=b {
                if crate::fields::fp::is_prime(n) {
                    out.push(n);
                }
            }
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
