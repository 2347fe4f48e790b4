//! Bivariate polynomials over a [`CoefficientField`], used inside the
//! expansion where coefficients leave Q.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::poly::{CoefficientField, FieldElem, MultiPoly, PolyError, PuiseuxSeries, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly {
    pub field: CoefficientField,
    /// `(i, j)` is the exponent of `x^i y^j`.
    pub terms: BTreeMap<(u32, u32), FieldElem>,
}

fn binom(n: u32, k: u32) -> Rational {
    let mut r = Rational::from_integer(1.into());
    for i in 0..k {
        r = r * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    r
}

impl BiPoly {
    pub fn from_multipoly(g: &MultiPoly) -> Self {
        assert_eq!(g.nvars(), 2);
        let field = CoefficientField::Rational;
        let terms = g.terms().map(|(m, c)| ((m.0[0], m.0[1]), field.from_rational(c.clone()))).collect();
        BiPoly { field, terms }
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    /// Splits off the largest monomial factor `x^a y^b`.
    pub fn monomial_split(&self) -> ((u32, u32), BiPoly) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let terms = self.terms.iter().map(|(&(i, j), c)| ((i - a, j - b), c.clone())).collect();
        ((a, b), BiPoly { field: self.field.clone(), terms })
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// `s^(-n) G(a s^p, s^q (b + y1))` as a polynomial in `(s, y1)`.
    pub fn weighted_shift(
        &self,
        field: &CoefficientField,
        a: &FieldElem,
        b: &FieldElem,
        p: u32,
        q: u32,
        n: u32,
    ) -> Result<BiPoly, PolyError> {
        let mut out: BTreeMap<(u32, u32), FieldElem> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let e = p * i + q * j;
            let shift = e.checked_sub(n).ok_or(PolyError::NotDivisible)?;
            let base = field.mul(c, &field.pow(a, i));
            for k in 0..=j {
                let t = field.mul(&base, &field.scale(&field.pow(b, j - k), &binom(j, k)));
                if t.is_zero() {
                    continue;
                }
                let entry = out.entry((shift, k)).or_insert_with(|| field.zero());
                *entry = field.add(entry, &t);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(BiPoly { field: field.clone(), terms: out })
    }

    /// `G(x(t), y(t))`.
    pub fn eval_series(&self, x: &PuiseuxSeries, y: &PuiseuxSeries) -> Result<PuiseuxSeries, PolyError> {
        let param = x.param();
        let mut acc = PuiseuxSeries::zero(param, self.field.clone());
        let mut xp: Vec<PuiseuxSeries> = alloc::vec![PuiseuxSeries::constant(param, self.field.clone(), self.field.one())];
        let mut yp = xp.clone();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp[xp.len() - 1].mul(x)?;
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp[yp.len() - 1].mul(y)?;
                yp.push(next);
            }
            let t = xp[i as usize].mul(&yp[j as usize])?.scale(c)?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Coefficients of `y^0` and `y^1` when the polynomial is linear in `y`
    /// with a constant `y`-coefficient.
    pub fn linear_in_y(&self) -> Option<(BTreeMap<u32, FieldElem>, FieldElem)> {
        if self.degree_y() != 1 {
            return None;
        }
        let mut lin = None;
        let mut rest = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            match (i, j) {
                (0, 1) => lin = Some(c.clone()),
                (_, 1) => return None,
                (i, _) => {
                    rest.insert(i, c.clone());
                }
            }
        }
        lin.map(|d| (rest, d))
    }

    pub fn constant_is_zero(&self) -> bool {
        self.coeff(0, 0).coords().iter().all(Zero::is_zero)
    }
}
