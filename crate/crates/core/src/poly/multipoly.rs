use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::PolyError;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q in a fixed, ordered list of variables.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The coordinate function of variable `i`.
    pub fn var(vars: &[String], i: usize) -> Self {
        Self::monomial(vars, Self::unit_exponent(vars.len(), i, 1), Rational::one())
    }

    pub fn var_named(vars: &[String], name: &str) -> Result<Self, PolyError> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &[String], exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn unit_exponent(n: usize, i: usize, k: u32) -> Vec<u32> {
        let mut e = vec![0; n];
        e[i] = k;
        e
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.0.len(), self.vars.len(), "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.depends_on(i)).collect()
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self, PolyError> {
        let i = self.var_index(name)?;
        Ok(self.derivative(i))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in variable `i`:
    /// entry `k` is the coefficient of `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// Composition: variable `i` is replaced by `values[i]`. All values must
    /// share one variable list, which becomes the result's.
    pub fn compose(&self, values: &[MultiPoly]) -> Self {
        assert_eq!(values.len(), self.nvars(), "one value per variable");
        let target: Vec<String> = match values.first() {
            Some(v) => v.vars.clone(),
            None => Vec::new(),
        };
        let mut powers: Vec<Vec<MultiPoly>> = values
            .iter()
            .map(|v| vec![Self::one(&target), v.clone()])
            .collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Replaces variable `i` by `value` (same variable list).
    pub fn substitute_var(&self, i: usize, value: &MultiPoly) -> Self {
        let values: Vec<MultiPoly> = (0..self.nvars())
            .map(|j| if j == i { value.clone() } else { Self::var(&self.vars, j) })
            .collect();
        self.compose(&values)
    }

    /// Splits off the largest monomial factor: `self = x^e * rest`, where no
    /// variable divides `rest`.
    pub fn monomial_split(&self) -> Result<(Vec<u32>, MultiPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let n = self.nvars();
        let mut content = vec![u32::MAX; n];
        for m in self.terms.keys() {
            for i in 0..n {
                content[i] = content[i].min(m.0[i]);
            }
        }
        let rest = MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(&content).map(|(a, b)| a - b).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        };
        Ok((content, rest))
    }

    /// Division by a single divisor in lexicographic order (variables in
    /// declaration order). The remainder is zero iff `d` divides `self`.
    pub fn div_rem(&self, d: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        if self.vars != d.vars {
            return Err(PolyError::VariableMismatch);
        }
        let (lm, lc) = match d.lex_leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        let mut q = Self::zero(&self.vars);
        let mut rem = Self::zero(&self.vars);
        let mut r = self.clone();
        while let Some((m, c)) = r.lex_leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
                let t = Self::monomial(&self.vars, e, &c / &lc);
                r = &r - &(&t * d);
                q = &q + &t;
            } else {
                r.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((q, rem))
    }

    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scaled to coprime integer coefficients with a positive graded-lex
    /// leading coefficient. Used to compare equations up to units.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = (c * Rational::from_integer(den.clone())).to_integer();
            g = g.gcd(&n);
        }
        let mut scale = Rational::new(den, g);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Monic with respect to the graded-lex leading term.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    /// Re-expresses the polynomial over another variable list containing
    /// every variable it uses.
    pub fn embed(&self, vars: &[String]) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => return Err(PolyError::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest `k` and polynomial `p` with `self = c * p^k` (`c` rational),
    /// found by term-by-term root extraction in graded-lex order.
    pub fn perfect_power(&self) -> Option<(MultiPoly, u32)> {
        if self.is_zero() || self.is_constant() {
            return None;
        }
        let d = self.total_degree();
        for k in (2..=d).rev() {
            if d % k != 0 {
                continue;
            }
            if let Some(p) = self.kth_root(k) {
                return Some((p, k));
            }
        }
        None
    }

    fn kth_root(&self, k: u32) -> Option<MultiPoly> {
        let (lm, _) = self.leading_term()?;
        if lm.0.iter().any(|e| e % k != 0) {
            return None;
        }
        let c = self.leading_term()?.1.clone();
        let unit = self.scale(&(Rational::one() / &c));
        let root_lm = Monomial(lm.0.iter().map(|e| e / k).collect());
        let mut root = Self::monomial(&self.vars, root_lm.0.clone(), Rational::one());
        let kq = int(k as i64);
        // leading term of k * root^(k-1)
        let lead_pow: Vec<u32> = root_lm.0.iter().map(|e| e * (k - 1)).collect();
        let budget = self.num_terms() * 4 + 16;
        for _ in 0..budget {
            let err = &unit - &root.pow(k);
            let (em, ec) = match err.leading_term() {
                None => return Some(root),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            if !Monomial(lead_pow.clone()).divides(&em) {
                return None;
            }
            let e: Vec<u32> = em.0.iter().zip(&lead_pow).map(|(a, b)| a - b).collect();
            if Monomial(e.clone()) >= root_lm {
                return None;
            }
            root = &root + &Self::monomial(&self.vars, e, &ec / &kq);
        }
        None
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

fn fmt_coeff(c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.degree() == 0;
            let mut first = true;
            if is_const || !abs.is_one() {
                fmt_coeff(&abs, f)?;
                first = false;
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", v)?;
                } else {
                    write!(f, "{}^{}", v, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
