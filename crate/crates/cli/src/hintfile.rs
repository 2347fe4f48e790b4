//! Hint files: user-asserted parameterizations and factorizations.
//!
//! ```text
//! # comment
//! component V(y,3*x+2*t): x = (3/4)*T^3, t = -(9/8)*T^2, y = 0
//! decompose x^2*y - y^3: y^1 * (x-y)^1 * (x+y)^1
//! ```

use std::collections::BTreeMap;

use carrousel_core::cycles::{DecompositionHint, Hints, ParamHint};
use carrousel_core::poly::{CoefficientField, FieldElem, MultiPoly, PuiseuxSeries};

use crate::parse::{parse_polynomial, parse_polynomial_open, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("hint line {line}: {msg}")]
pub struct HintError {
    pub line: usize,
    pub msg: String,
}

/// Splits at commas (or `sep`) outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn series_from(p: &MultiPoly, param: &str) -> PuiseuxSeries {
    let terms = p.terms().map(|(m, c)| (m.0.first().copied().unwrap_or(0) as i64, FieldElem::rational(c.clone())));
    PuiseuxSeries::from_terms(param, CoefficientField::Rational, 1, terms, None)
}

fn component(line: usize, name: &str, body: &str, vars: &[String]) -> Result<ParamHint, HintError> {
    let err = |msg: String| HintError { line, msg };
    let mut raw = Vec::new();
    let mut params: Vec<String> = Vec::new();
    for item in split_top(body, ',') {
        let Some((lhs, rhs)) = item.split_once('=') else {
            return Err(err(format!("expected `var = expression`, found `{}`", item.trim())));
        };
        let var = lhs.trim();
        if !vars.iter().any(|v| v == var) {
            return Err(err(format!("`{}` is not a declared variable", var)));
        }
        let (p, names) = parse_polynomial_open(rhs).map_err(|e: ParseError| err(e.to_string()))?;
        for n in names {
            if vars.contains(&n) {
                return Err(err(format!("parameterization of `{}` uses the coordinate `{}`", var, n)));
            }
            if !params.contains(&n) {
                params.push(n);
            }
        }
        raw.push((var.to_string(), rhs.to_string(), p));
    }
    if params.len() > 1 {
        return Err(err(format!("more than one parameter: {}", params.join(", "))));
    }
    let param = params.pop().unwrap_or_else(|| "T".into());
    let pv = [param.clone()];
    let mut series = BTreeMap::new();
    for (var, rhs, _) in raw {
        let p = parse_polynomial(&rhs, &pv).map_err(|e| err(e.to_string()))?;
        if series.insert(var.clone(), series_from(&p, &param)).is_some() {
            return Err(err(format!("`{}` assigned twice", var)));
        }
    }
    Ok(ParamHint { component: name.trim().to_string(), series })
}

fn factor(line: usize, text: &str, vars: &[String]) -> Result<(MultiPoly, u32), HintError> {
    let err = |msg: String| HintError { line, msg };
    let t = text.trim();
    // a trailing `^k` after a parenthesis or a bare name is the multiplicity
    if let Some((base, k)) = t.rsplit_once('^') {
        let base = base.trim();
        let simple = base.ends_with(')') || base.chars().all(|c| c.is_alphanumeric() || c == '_');
        if let (true, Ok(k)) = (simple, k.trim().parse::<u32>()) {
            let p = parse_polynomial(base, vars).map_err(|e| err(e.to_string()))?;
            return Ok((p, k));
        }
    }
    Ok((parse_polynomial(t, vars).map_err(|e| err(e.to_string()))?, 1))
}

pub fn parse_hints(text: &str, vars: &[String]) -> Result<Hints, HintError> {
    let mut hints = Hints::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        // the name may itself contain `:` only inside parentheses
        let parts = split_top(rest, ':');
        if parts.len() != 2 {
            return Err(HintError { line, msg: "expected `<head>: <body>`".into() });
        }
        match kw {
            "component" => hints.parameterizations.push(component(line, parts[0], parts[1], vars)?),
            "decompose" => {
                let poly = parse_polynomial(parts[0], vars).map_err(|e| HintError { line, msg: e.to_string() })?;
                let factors = split_top(parts[1], '*').into_iter().map(|f| factor(line, f, vars)).collect::<Result<_, _>>()?;
                hints.decompositions.push(DecompositionHint { poly, factors });
            }
            other => return Err(HintError { line, msg: format!("unknown directive `{}`", other) }),
        }
    }
    Ok(hints)
}
