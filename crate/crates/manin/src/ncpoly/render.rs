//! Canonical text form of polynomials and its parser.
//!
//! Terms are written in canonical word order as `coef·q^k·g1·g2`, joined by
//! ` + ` and ` − `. Integer coefficients print without a denominator; the
//! zero polynomial prints as `0`.

use super::word::{Gen, Mono, Word};
use super::Q;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

pub const MINUS: char = '−';

pub fn render_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_body(names: &[String], m: &Mono, c: &Q) -> String {
    let mut parts = vec![render_rational(c)];
    match m.q {
        0 => {}
        1 => parts.push("q".to_string()),
        k => parts.push(format!("q^{k}")),
    }
    for &g in m.word.as_slice() {
        parts.push(names[g as usize].clone());
    }
    parts.join("·")
}

/// Render a term list, which must already be in canonical order.
pub fn render_terms<'a, I>(names: &[String], terms: I) -> String
where
    I: IntoIterator<Item = (&'a Mono, &'a Q)>,
{
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let body = render_body(names, m, &c.abs());
        if i == 0 {
            if c.is_negative() {
                out.push(MINUS);
            }
        } else if c.is_negative() {
            out.push_str(" − ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn looks_rational(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|ch| ch.is_ascii_digit() || ch == '/')
        && s.starts_with(|ch: char| ch.is_ascii_digit())
}

fn parse_term(tok: &str, index: &HashMap<String, Gen>) -> Result<(Mono, Q)> {
    let mut coef = Q::one();
    let mut q = 0i32;
    let mut word = Vec::new();
    for (i, f) in tok.split('·').enumerate() {
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{tok}`")));
        }
        if i == 0 && looks_rational(f) && !index.contains_key(f) {
            coef = parse_rational(f)?;
        } else if f == "q" && !index.contains_key(f) {
            q += 1;
        } else if let Some(e) = f.strip_prefix("q^").filter(|_| !index.contains_key(f)) {
            q += e
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad q exponent `{f}`")))?;
        } else {
            let g = index
                .get(f)
                .ok_or_else(|| Error::UnknownGenerator(f.to_string()))?;
            word.push(*g);
        }
    }
    Ok((Mono::new(Word::from_slice(&word), q), coef))
}

/// Parse the canonical rendering (ASCII `-` and `*` are accepted as well).
/// Terms are returned as written, without normalization.
pub fn parse_terms(s: &str, index: &HashMap<String, Gen>) -> Result<Vec<(Mono, Q)>> {
    let s = s.replace('*', "·");
    let mut out = Vec::new();
    let mut sign = Q::one();
    let mut expect_term = true;
    for tok in s.split_whitespace() {
        if tok == "+" || tok == "-" || tok == "−" {
            if expect_term && tok != "+" && out.is_empty() {
                sign = -sign;
                continue;
            }
            if expect_term {
                return Err(Error::Parse(format!("dangling operator in `{s}`")));
            }
            sign = if tok == "+" { Q::one() } else { -Q::one() };
            expect_term = true;
            continue;
        }
        if !expect_term {
            return Err(Error::Parse(format!("missing operator before `{tok}`")));
        }
        let (tok, neg) = match tok.strip_prefix('−').or_else(|| tok.strip_prefix('-')) {
            Some(rest) => (rest, true),
            None => (tok, false),
        };
        if tok == "0" {
            expect_term = false;
            continue;
        }
        let (m, c) = parse_term(tok, index)?;
        let c = if neg { -c } else { c };
        out.push((m, c * &sign));
        sign = Q::one();
        expect_term = false;
    }
    if expect_term && !out.is_empty() {
        return Err(Error::Parse(format!("trailing operator in `{s}`")));
    }
    Ok(out)
}
