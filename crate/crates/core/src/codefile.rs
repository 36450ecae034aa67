//! Plain-text code files.
//!
//! ```text
//! # RM(1,2)
//! m=2
//! 1
//! 0
//! x1
//! ```
//!
//! The first non-comment line is `m=<int>`. Every following line is one
//! monomial: `1` for the constant, otherwise space-separated variable
//! indices (`0 2 3` is `x0x2x3`). Indices may carry an `x` prefix. A line
//! holding only the bare token `1` always means the constant, so the lone
//! variable `x1` has to be written with its prefix. `#` starts a comment.
//!
//! Serialization is canonical: indices ascend within a line and lines are
//! sorted by degree, then mask.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialCode};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_code(text: &str) -> Result<MonomialCode> {
    let mut m: Option<usize> = None;
    let mut gens = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(m) = m else {
            let value = line
                .strip_prefix("m=")
                .ok_or_else(|| parse_error(line_no, "expected header `m=<int>`"))?;
            let parsed: usize = value
                .trim()
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad variable count `{value}`")))?;
            crate::monomial::check_vars(parsed).map_err(|e| parse_error(line_no, e.to_string()))?;
            m = Some(parsed);
            continue;
        };
        let g = parse_monomial(line, m).map_err(|msg| parse_error(line_no, msg))?;
        if !gens.insert(g) {
            return Err(parse_error(line_no, format!("duplicate monomial {g}")));
        }
    }
    let m = m.ok_or_else(|| parse_error(0, "missing header `m=<int>`"))?;
    MonomialCode::new(m, gens)
}

fn parse_monomial(line: &str, m: usize) -> std::result::Result<Monomial, String> {
    if line == "1" {
        return Ok(Monomial::ONE);
    }
    let mut mask = 0u32;
    let mut last: Option<usize> = None;
    for tok in line.split_whitespace() {
        let digits = tok.strip_prefix('x').unwrap_or(tok);
        let j: usize = digits.parse().map_err(|_| format!("bad variable index `{tok}`"))?;
        if j >= m {
            return Err(format!("variable index {j} >= m = {m}"));
        }
        if last.is_some_and(|l| j <= l) {
            return Err(format!("variable indices must be strictly ascending (`{line}`)"));
        }
        last = Some(j);
        mask |= 1 << j;
    }
    Ok(Monomial::from_mask(mask))
}

fn format_monomial(g: Monomial) -> String {
    match g.degree() {
        0 => "1".to_owned(),
        1 if g == Monomial::var(1) => "x1".to_owned(),
        _ => g.vars().map(|j| j.to_string()).collect::<Vec<_>>().join(" "),
    }
}

pub fn serialize_code(code: &MonomialCode) -> String {
    let mut gens: Vec<Monomial> = code.gens().to_vec();
    gens.sort_by_key(|g| (g.degree(), g.mask()));
    let mut out = format!("m={}\n", code.m());
    for g in gens {
        let _ = writeln!(out, "{}", format_monomial(g));
    }
    out
}
