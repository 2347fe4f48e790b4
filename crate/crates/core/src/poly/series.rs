use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use super::field::{CoefficientField, FieldElem};
use super::multipoly::MultiPoly;
use super::rational::Rational;
use super::PolyError;

/// Order of vanishing of a series: a rational exponent, or infinity for a
/// series certified to be zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesOrder {
    Finite(Rational),
    Infinite,
}

impl SeriesOrder {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SeriesOrder::Finite(q) => Some(q),
            SeriesOrder::Infinite => None,
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(q) => write!(f, "{}", q),
            SeriesOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Truncated series in `param^(1/ramification)`.
///
/// The key `k` of `terms` stands for `param^(k/ramification)`. Coefficients
/// at exponents `>= truncation` are unknown; `truncation == None` marks an
/// exact (finite) series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PuiseuxSeries {
    param: String,
    ramification: u32,
    field: CoefficientField,
    terms: BTreeMap<i64, FieldElem>,
    truncation: Option<i64>,
}

impl PuiseuxSeries {
    pub fn zero(param: &str, field: CoefficientField) -> Self {
        PuiseuxSeries {
            param: param.into(),
            ramification: 1,
            field,
            terms: BTreeMap::new(),
            truncation: None,
        }
    }

    /// Exact single term `c * param^(k / ramification)`.
    pub fn monomial(param: &str, field: CoefficientField, c: FieldElem, k: i64, ramification: u32) -> Self {
        let mut s = Self::zero(param, field);
        s.ramification = ramification.max(1);
        let c = s.field.lift(&c);
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s.normalized()
    }

    pub fn constant(param: &str, field: CoefficientField, c: FieldElem) -> Self {
        Self::monomial(param, field, c, 0, 1)
    }

    /// The parameter itself.
    pub fn parameter(param: &str, field: CoefficientField) -> Self {
        let one = field.one();
        Self::monomial(param, field, one, 1, 1)
    }

    pub fn from_terms(
        param: &str,
        field: CoefficientField,
        ramification: u32,
        terms: impl IntoIterator<Item = (i64, FieldElem)>,
        truncation: Option<i64>,
    ) -> Self {
        let mut s = Self::zero(param, field);
        s.ramification = ramification.max(1);
        s.truncation = truncation;
        for (k, c) in terms {
            if truncation.map(|t| k >= t).unwrap_or(false) {
                continue;
            }
            let c = s.field.lift(&c);
            if !c.is_zero() {
                let entry = s.terms.entry(k).or_insert_with(|| s.field.zero());
                *entry = s.field.add(entry, &c);
                if entry.is_zero() {
                    s.terms.remove(&k);
                }
            }
        }
        s.normalized()
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    /// Truncation as a rational exponent of the parameter.
    pub fn truncation_exponent(&self) -> Option<Rational> {
        self.truncation.map(|t| Rational::new(t.into(), (self.ramification as i64).into()))
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.truncation.is_none()
    }

    /// First nonzero coefficient and its exponent key.
    pub fn leading(&self) -> Option<(i64, &FieldElem)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElem> {
        self.leading().map(|(_, c)| c)
    }

    /// Reinterprets over a larger ramification index `r` (a multiple of the
    /// current one).
    pub fn with_ramification(&self, r: u32) -> Self {
        assert!(r % self.ramification == 0, "ramification must divide");
        let f = (r / self.ramification) as i64;
        PuiseuxSeries {
            param: self.param.clone(),
            ramification: r,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            truncation: self.truncation.map(|t| t * f),
        }
    }

    /// Minimal ramification index.
    pub fn normalized(mut self) -> Self {
        let mut g = self.ramification as i64;
        for k in self.terms.keys() {
            g = g.gcd(k);
        }
        if let Some(t) = self.truncation {
            g = g.gcd(&t);
        }
        if g > 1 {
            self.ramification /= g as u32;
            self.terms = core::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
            self.truncation = self.truncation.map(|t| t / g);
        }
        self
    }

    pub fn with_field(&self, field: &CoefficientField) -> Result<Self, PolyError> {
        let field = self.field.join(field)?;
        Ok(PuiseuxSeries {
            param: self.param.clone(),
            ramification: self.ramification,
            terms: self.terms.iter().map(|(k, c)| (*k, field.lift(c))).collect(),
            field,
            truncation: self.truncation,
        })
    }

    fn align(&self, other: &Self) -> Result<(Self, Self), PolyError> {
        if self.param != other.param {
            return Err(PolyError::MixedParameters);
        }
        let field = self.field.join(&other.field)?;
        let r = self.ramification.lcm(&other.ramification);
        Ok((
            self.with_ramification(r).with_field(&field)?,
            other.with_ramification(r).with_field(&field)?,
        ))
    }

    fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.truncation)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let (a, b) = self.align(other)?;
        let trunc = match (a.truncation, b.truncation) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let terms = a.terms.into_iter().chain(b.terms);
        Ok(Self::from_terms(&a.param, a.field, a.ramification, terms, trunc))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, self.field.neg(c))).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Self, PolyError> {
        let s = Self::constant(&self.param, self.field.clone(), c.clone());
        self.mul(&s)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        let (a, b) = self.align(other)?;
        if a.is_exact_zero() || b.is_exact_zero() {
            return Ok(Self::zero(&a.param, a.field));
        }
        let mut trunc: Option<i64> = None;
        if let (Some(tb), Some(la)) = (b.truncation, a.low()) {
            trunc = Some(la + tb);
        }
        if let (Some(ta), Some(lb)) = (a.truncation, b.low()) {
            trunc = Some(trunc.map_or(lb + ta, |t| t.min(lb + ta)));
        }
        let mut out: BTreeMap<i64, FieldElem> = BTreeMap::new();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                let k = i + j;
                if trunc.map(|t| k >= t).unwrap_or(false) {
                    break;
                }
                let t = a.field.mul(x, y);
                let e = out.entry(k).or_insert_with(|| a.field.zero());
                *e = a.field.add(e, &t);
            }
        }
        Ok(Self::from_terms(&a.param, a.field, a.ramification, out, trunc))
    }

    pub fn pow(&self, k: u32) -> Result<Self, PolyError> {
        let mut acc = Self::constant(&self.param, self.field.clone(), self.field.one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Drops everything at exponent key `>= t`.
    pub fn truncate(&self, t: i64) -> Self {
        let t = self.truncation.map_or(t, |old| old.min(t));
        Self::from_terms(
            &self.param,
            self.field.clone(),
            self.ramification,
            self.terms.iter().map(|(k, c)| (*k, c.clone())),
            Some(t),
        )
    }
}

/// Least exponent with nonzero coefficient. Infinite only for series known
/// to vanish exactly; a truncated series with no visible term yields
/// `IndeterminateOrder`.
pub fn series_order(s: &PuiseuxSeries) -> Result<SeriesOrder, PolyError> {
    match s.leading() {
        Some((k, _)) => Ok(SeriesOrder::Finite(Rational::new(k.into(), (s.ramification as i64).into()))),
        None => match s.truncation_exponent() {
            None => Ok(SeriesOrder::Infinite),
            Some(t) => Err(PolyError::IndeterminateOrder(t)),
        },
    }
}

/// Composes a polynomial with series assigned to its variables.
pub fn substitute(p: &MultiPoly, assignment: &BTreeMap<String, PuiseuxSeries>) -> Result<PuiseuxSeries, PolyError> {
    let first = assignment.values().next().ok_or_else(|| match p.vars().first() {
        Some(v) => PolyError::Unassigned(v.clone()),
        None => PolyError::MixedParameters,
    })?;
    let param = first.param().into();
    let mut field = CoefficientField::Rational;
    let mut r = 1u32;
    for s in assignment.values() {
        if s.param() != first.param() {
            return Err(PolyError::MixedParameters);
        }
        field = field.join(s.field())?;
        r = r.lcm(&s.ramification());
    }
    let used = p.support_vars();
    let mut series: Vec<Option<PuiseuxSeries>> = Vec::new();
    for (i, v) in p.vars().iter().enumerate() {
        if !used.contains(&i) {
            series.push(None);
            continue;
        }
        let s = assignment.get(v).ok_or_else(|| PolyError::Unassigned(v.clone()))?;
        series.push(Some(s.with_ramification(r).with_field(&field)?));
    }
    let mut powers: Vec<Vec<PuiseuxSeries>> = series
        .iter()
        .map(|s| match s {
            Some(s) => alloc::vec![s.clone()],
            None => Vec::new(),
        })
        .collect();
    let mut acc = PuiseuxSeries::zero(param, field.clone()).with_ramification(r);
    for (m, c) in p.terms() {
        let mut t = PuiseuxSeries::constant(param, field.clone(), field.from_rational(c.clone()));
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() < e as usize {
                let next = powers[i][powers[i].len() - 1].mul(&powers[i][0])?;
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize - 1])?;
        }
        acc = acc.add(&t)?;
    }
    Ok(acc.normalized())
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = Rational::new((*k).into(), (self.ramification as i64).into());
            write!(f, "({})", self.field.display(c))?;
            if !e.is_zero() {
                write!(f, "*{}^{}", self.param, e)?;
            }
        }
        if let Some(t) = self.truncation_exponent() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O({}^{})", self.param, t)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::multipoly::vars;
    use crate::poly::{int, rat};

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::rational(rat(n, d))
    }

    #[test]
    fn flagship_polar_branch_composition() {
        // f = y^2 - x^4 + (s^3 - t^2) x^3 at s = u, x = (3/4)u^3, y = t = 0
        let v = vars(&["s", "t", "x", "y"]);
        let f = MultiPoly::from_terms(
            &v,
            [
                (alloc::vec![0, 0, 0, 2], int(1)),
                (alloc::vec![0, 0, 4, 0], int(-1)),
                (alloc::vec![3, 0, 3, 0], int(1)),
                (alloc::vec![0, 2, 3, 0], int(-1)),
            ],
        );
        let fq = CoefficientField::Rational;
        let mut a = BTreeMap::new();
        a.insert("s".into(), PuiseuxSeries::parameter("u", fq.clone()));
        a.insert("x".into(), PuiseuxSeries::monomial("u", fq.clone(), q(3, 4), 3, 1));
        a.insert("y".into(), PuiseuxSeries::zero("u", fq.clone()));
        a.insert("t".into(), PuiseuxSeries::zero("u", fq.clone()));
        let s = substitute(&f, &a).unwrap();
        assert_eq!(series_order(&s).unwrap(), SeriesOrder::Finite(int(12)));
        assert_eq!(s.leading_coefficient().unwrap(), &q(27, 256));
        let z0 = MultiPoly::var(&v, 0);
        let s0 = substitute(&z0, &a).unwrap();
        assert_eq!(s0, PuiseuxSeries::parameter("u", fq));
    }

    #[test]
    fn cusp_parameterization_vanishes() {
        let v = vars(&["x", "y"]);
        let f = MultiPoly::from_terms(&v, [(alloc::vec![0, 2], int(1)), (alloc::vec![3, 0], int(-1))]);
        let fq = CoefficientField::Rational;
        let mut a = BTreeMap::new();
        a.insert("x".into(), PuiseuxSeries::monomial("t", fq.clone(), q(1, 1), 2, 1));
        a.insert("y".into(), PuiseuxSeries::monomial("t", fq.clone(), q(1, 1), 3, 1));
        let s = substitute(&f, &a).unwrap();
        assert_eq!(series_order(&s).unwrap(), SeriesOrder::Infinite);
    }

    #[test]
    fn fractional_and_indeterminate_orders() {
        let fq = CoefficientField::Rational;
        let s = PuiseuxSeries::from_terms("t", fq.clone(), 2, [(3, q(1, 1)), (4, q(1, 1))], None);
        assert_eq!(series_order(&s).unwrap(), SeriesOrder::Finite(rat(3, 2)));
        let unknown = PuiseuxSeries::from_terms("t", fq.clone(), 1, [], Some(5));
        assert_eq!(series_order(&unknown), Err(PolyError::IndeterminateOrder(int(5))));
        // O(t^5) * (t^2 + ...) = O(t^7)
        let p = PuiseuxSeries::from_terms("t", fq, 1, [(2, q(1, 1))], Some(9));
        assert_eq!(unknown.mul(&p).unwrap().truncation(), Some(7));
    }

    #[test]
    fn mixed_parameters_rejected() {
        let fq = CoefficientField::Rational;
        let a = PuiseuxSeries::parameter("t", fq.clone());
        let b = PuiseuxSeries::parameter("u", fq.clone());
        assert_eq!(a.add(&b), Err(PolyError::MixedParameters));
        let k2 = CoefficientField::binomial("k", 2, rat(-1, 1));
        let k3 = CoefficientField::binomial("k", 3, rat(2, 1));
        let c = PuiseuxSeries::constant("t", k2.clone(), k2.generator());
        let d = PuiseuxSeries::constant("t", k3.clone(), k3.generator());
        assert_eq!(c.mul(&d), Err(PolyError::IncompatibleFields));
    }
}
