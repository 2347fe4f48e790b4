//! Factor forms `(L^k±1)…/(…)` for characteristic polynomials.
//!
//! `L`, `λ` and `lambda` all name the variable. A `±` sign stands for both
//! choices, so one spec may denote several candidates. The display form of
//! [`CharPoly`] (`(λ^12 + 1)/[(λ^4 + 1)(λ + 1)]`) is accepted as well.

use carrousel_core::monodromy::{Binomial, CharPoly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("factorspec column {col}: {msg}")]
pub struct FactorSpecError {
    pub col: usize,
    pub msg: String,
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
}

/// A factor whose sign may still be open.
#[derive(Clone, Copy)]
struct Slot {
    k: u64,
    sign: Option<bool>,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
        Cursor { chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(1, |&(i, _)| i + 1), |&(i, _)| i)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FactorSpecError> {
        Err(FactorSpecError { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FactorSpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c))
        }
    }

    fn int(&mut self) -> Result<u64, FactorSpecError> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().or_else(|_| self.err("integer too large"))
    }

    fn variable(&mut self) -> bool {
        for name in ["lambda", "L", "λ"] {
            let n = name.chars().count();
            let matches = self.chars.len() >= self.pos + n
                && self.chars[self.pos..self.pos + n].iter().map(|&(_, c)| c).eq(name.chars());
            if matches {
                self.pos += n;
                return true;
            }
        }
        false
    }

    fn binomial(&mut self) -> Result<Slot, FactorSpecError> {
        if !self.variable() {
            return self.err("expected `L`");
        }
        let k = if self.eat('^') { self.int()? } else { 1 };
        if k == 0 {
            return self.err("exponent must be positive");
        }
        let sign = match self.peek() {
            Some('+') => Some(true),
            Some('-') => Some(false),
            Some('±') => None,
            _ => return self.err("expected `+1`, `-1` or `±1`"),
        };
        self.pos += 1;
        if self.int()? != 1 {
            self.pos -= 1;
            return self.err("constant term must be 1");
        }
        Ok(Slot { k, sign })
    }

    /// `1`, a bare binomial, or parenthesized binomials with optional powers.
    fn product(&mut self) -> Result<Vec<Slot>, FactorSpecError> {
        if self.eat('1') {
            return Ok(Vec::new());
        }
        if self.peek() != Some('(') {
            return Ok(vec![self.binomial()?]);
        }
        let mut out = Vec::new();
        while self.eat('(') {
            let b = self.binomial()?;
            self.expect(')')?;
            let times = if self.eat('^') { self.int()? } else { 1 };
            out.extend(std::iter::repeat(b).take(times as usize));
        }
        Ok(out)
    }
}

fn expand(num: &[Slot], den: &[Slot]) -> Vec<CharPoly> {
    let open = num.iter().chain(den).filter(|s| s.sign.is_none()).count();
    let mut out: Vec<CharPoly> = Vec::new();
    for mask in 0..(1u64 << open) {
        let mut bit = 0;
        let mut pick = |s: &Slot| {
            let plus = s.sign.unwrap_or_else(|| {
                let b = mask >> bit & 1 == 0;
                bit += 1;
                b
            });
            Binomial { k: s.k, plus }
        };
        let n: Vec<Binomial> = num.iter().map(&mut pick).collect();
        let d: Vec<Binomial> = den.iter().map(&mut pick).collect();
        let c = CharPoly::new(n, d);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// All characteristic polynomials denoted by `text`; `+` before `-` for
/// each `±`, leftmost first.
pub fn parse_factorspec(text: &str) -> Result<Vec<CharPoly>, FactorSpecError> {
    let mut c = Cursor::new(text);
    if c.peek().is_none() {
        return c.err("empty factorspec");
    }
    let num = c.product()?;
    let mut den = Vec::new();
    if c.eat('/') {
        den = if c.eat('[') {
            let d = c.product()?;
            c.expect(']')?;
            d
        } else {
            c.product()?
        };
    }
    if c.peek().is_some() {
        return c.err("unexpected trailing input");
    }
    if num.iter().chain(&den).filter(|s| s.sign.is_none()).count() > 16 {
        return c.err("too many `±` signs");
    }
    Ok(expand(&num, &den))
}

/// Exactly one characteristic polynomial.
pub fn parse_charpoly(text: &str) -> Result<CharPoly, FactorSpecError> {
    let mut v = parse_factorspec(text)?;
    if v.len() != 1 {
        return Err(FactorSpecError { col: 1, msg: "`±` not allowed here".into() });
    }
    Ok(v.remove(0))
}
