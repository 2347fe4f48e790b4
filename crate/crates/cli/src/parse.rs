//! Polynomial expressions over Q.
//!
//! Grammar: integers, `p/q` rationals, identifiers, `+ - * / ^`, parentheses.
//! Exponents are non-negative integer literals; division is by nonzero
//! constants only.

use std::fmt;

use carrousel_core::poly::{MultiPoly, Rational};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "{}:{}: syntax error: {}", self.line, self.col, m),
            ParseErrorKind::UnknownIdentifier(v) => write!(f, "{}:{}: unknown identifier `{}`", self.line, self.col, v),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn next_tok(&mut self) -> Result<(Tok, usize, usize), ParseError> {
        while self.chars.peek().map_or(false, |c| c.is_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let Some(&c) = self.chars.peek() else { return Ok((Tok::End, line, col)) };
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                self.bump();
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = self.chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                self.bump();
            }
            Tok::Ident(s)
        } else if "+-*/^()".contains(c) {
            self.bump();
            Tok::Op(c)
        } else {
            return Err(ParseError { line, col, kind: ParseErrorKind::Syntax(format!("unexpected character `{}`", c)) });
        };
        Ok((tok, line, col))
    }
}

/// How identifiers resolve to variables.
enum Scope<'v> {
    Fixed(&'v [String]),
    /// Variables are collected in order of first appearance.
    Open(Vec<String>),
}

struct Parser<'v> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    scope: Scope<'v>,
}

impl<'v> Parser<'v> {
    fn new(text: &str, scope: Scope<'v>) -> Result<Self, ParseError> {
        let mut lx = Lexer { chars: text.chars().peekable(), line: 1, col: 1 };
        let mut toks = Vec::new();
        loop {
            let t = lx.next_tok()?;
            let end = t.0 == Tok::End;
            toks.push(t);
            if end {
                break;
            }
        }
        Ok(Parser { toks, pos: 0, scope })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (_, line, col) = self.toks[self.pos];
        Err(ParseError { line, col, kind: ParseErrorKind::Syntax(msg.into()) })
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Int(n) => format!("`{}`", n),
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Op(c) => format!("`{}`", c),
            Tok::End => "end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.advance();
            let rhs = self.term()?;
            acc = Expr::Bin(c, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            let (_, line, col) = self.toks[self.pos];
            self.advance();
            let rhs = self.unary()?;
            acc = if c == '/' { Expr::Div(Box::new(acc), Box::new(rhs), line, col) } else { Expr::Bin('*', Box::new(acc), Box::new(rhs)) };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match *self.peek() {
            Tok::Op('-') => {
                self.advance();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.advance();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.advance();
        match self.peek().clone() {
            Tok::Int(k) => {
                let Ok(k) = u32::try_from(&k) else { return self.err("exponent too large") };
                self.advance();
                if *self.peek() == Tok::Op('^') {
                    return self.err("chained exponents need parentheses");
                }
                Ok(Expr::Pow(Box::new(base), k))
            }
            Tok::Op('-') => self.err("negative exponent"),
            t => self.err(format!("expected a non-negative integer exponent, found {}", Self::describe(&t))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (_, line, col) = self.toks[self.pos];
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Const(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                let idx = match &mut self.scope {
                    Scope::Fixed(vars) => vars.iter().position(|v| *v == name),
                    Scope::Open(vars) => Some(vars.iter().position(|v| *v == name).unwrap_or_else(|| {
                        vars.push(name.clone());
                        vars.len() - 1
                    })),
                };
                match idx {
                    Some(i) => {
                        self.advance();
                        Ok(Expr::Var(i))
                    }
                    None => Err(ParseError { line, col, kind: ParseErrorKind::UnknownIdentifier(name) }),
                }
            }
            Tok::Op('(') => {
                self.advance();
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.err(format!("expected `)`, found {}", Self::describe(self.peek())));
                }
                self.advance();
                Ok(e)
            }
            t => self.err(format!("expected a term, found {}", Self::describe(&t))),
        }
    }
}

enum Expr {
    Const(Rational),
    Var(usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize, usize),
    Pow(Box<Expr>, u32),
}

fn eval(e: &Expr, vars: &[String]) -> Result<MultiPoly, ParseError> {
    Ok(match e {
        Expr::Const(c) => MultiPoly::constant(vars, c.clone()),
        Expr::Var(i) => MultiPoly::var(vars, *i),
        Expr::Neg(a) => -&eval(a, vars)?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(a, vars)?, eval(b, vars)?);
            match op {
                '+' => &a + &b,
                '-' => &a - &b,
                _ => &a * &b,
            }
        }
        Expr::Div(a, b, line, col) => {
            let b = eval(b, vars)?;
            if !b.is_constant() || b.is_zero() {
                let msg = if b.is_zero() { "division by zero" } else { "division by a non-constant" };
                return Err(ParseError { line: *line, col: *col, kind: ParseErrorKind::Syntax(msg.into()) });
            }
            eval(a, vars)?.scale(&(Rational::one() / b.constant_term()))
        }
        Expr::Pow(a, k) => eval(a, vars)?.pow(*k),
    })
}

fn parse_with<'v>(text: &str, scope: Scope<'v>) -> Result<(MultiPoly, Vec<String>), ParseError> {
    let mut p = Parser::new(text, scope)?;
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", Parser::describe(p.peek())));
    }
    let vars = match p.scope {
        Scope::Fixed(v) => v.to_vec(),
        Scope::Open(v) => v,
    };
    Ok((eval(&e, &vars)?, vars))
}

/// Parses `text` as a polynomial in the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<MultiPoly, ParseError> {
    parse_with(text, Scope::Fixed(vars)).map(|(p, _)| p)
}

/// Parses `text`, collecting its identifiers as variables in order of
/// first appearance.
pub fn parse_polynomial_open(text: &str) -> Result<(MultiPoly, Vec<String>), ParseError> {
    parse_with(text, Scope::Open(Vec::new()))
}

/// Parses a rational literal `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let p = parse_polynomial(text, &[])?;
    Ok(p.constant_term())
}
