use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{is_perfect_power, Rational};
use super::PolyError;

/// `Q(θ)` with `θ^degree = constant`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialExtension {
    pub generator: String,
    pub degree: u32,
    pub constant: Rational,
}

impl BinomialExtension {
    /// `x^degree - constant` is irreducible over Q (Capelli): `constant` is
    /// no `p`-th power for a prime `p | degree`, and when `4 | degree` it
    /// is not of the form `-4 d^4`.
    pub fn is_field(&self) -> bool {
        if self.degree == 0 || self.constant.is_zero() {
            return false;
        }
        let n = self.degree;
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                if is_perfect_power(&self.constant, p) {
                    return false;
                }
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 && is_perfect_power(&self.constant, m) {
            return false;
        }
        if n % 4 == 0 {
            let q = -&self.constant / Rational::from_integer(4.into());
            if q.is_positive() && is_perfect_power(&q, 4) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub enum CoefficientField {
    #[default]
    Rational,
    Binomial(BinomialExtension),
}

/// Element of a [`CoefficientField`]: coordinates in the basis
/// `1, θ, ..., θ^(d-1)`. Rational elements have one coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElem {
    coords: Vec<Rational>,
}

impl FieldElem {
    pub fn rational(q: Rational) -> Self {
        FieldElem { coords: vec![q] }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

impl CoefficientField {
    pub fn binomial(generator: &str, degree: u32, constant: Rational) -> Self {
        if degree == 1 {
            return CoefficientField::Rational;
        }
        CoefficientField::Binomial(BinomialExtension {
            generator: generator.into(),
            degree,
            constant,
        })
    }

    pub fn degree(&self) -> usize {
        match self {
            CoefficientField::Rational => 1,
            CoefficientField::Binomial(e) => e.degree as usize,
        }
    }

    /// The field containing both, when one contains the other.
    pub fn join(&self, other: &CoefficientField) -> Result<CoefficientField, PolyError> {
        match (self, other) {
            (CoefficientField::Rational, f) | (f, CoefficientField::Rational) => Ok(f.clone()),
            (a, b) if a == b => Ok(a.clone()),
            _ => Err(PolyError::IncompatibleFields),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coords: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElem {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    pub fn generator(&self) -> FieldElem {
        let mut e = self.zero();
        match self {
            CoefficientField::Rational => {}
            CoefficientField::Binomial(_) => e.coords[1] = Rational::one(),
        }
        e
    }

    /// Pads an element of a subfield (Q) to this field's basis.
    pub fn lift(&self, a: &FieldElem) -> FieldElem {
        if a.coords.len() == self.degree() {
            return a.clone();
        }
        let mut e = self.zero();
        e.coords[0] = a.coords[0].clone();
        e
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let (a, b) = (self.lift(a), self.lift(b));
        FieldElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem { coords: self.lift(a).coords.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let (a, b) = (self.lift(a), self.lift(b));
        match self {
            CoefficientField::Rational => FieldElem::rational(&a.coords[0] * &b.coords[0]),
            CoefficientField::Binomial(ext) => {
                let d = ext.degree as usize;
                let mut out = vec![Rational::zero(); d];
                for (i, x) in a.coords.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coords.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let t = x * y;
                        if i + j < d {
                            out[i + j] += t;
                        } else {
                            out[i + j - d] += t * &ext.constant;
                        }
                    }
                }
                FieldElem { coords: out }
            }
        }
    }

    pub fn scale(&self, a: &FieldElem, q: &Rational) -> FieldElem {
        FieldElem { coords: self.lift(a).coords.iter().map(|x| x * q).collect() }
    }

    pub fn pow(&self, a: &FieldElem, k: u32) -> FieldElem {
        let mut acc = self.one();
        let mut base = self.lift(a);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer powers, negative exponents through [`Self::inv`].
    pub fn powi(&self, a: &FieldElem, k: i64) -> Result<FieldElem, PolyError> {
        if k >= 0 {
            Ok(self.pow(a, k as u32))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(&inv, (-k) as u32))
        }
    }

    /// Inverse by solving the multiplication-by-`a` system.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, PolyError> {
        let a = self.lift(a);
        if a.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let d = self.degree();
        if d == 1 {
            return Ok(FieldElem::rational(Rational::one() / &a.coords[0]));
        }
        // column j of the matrix is a * θ^j
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        let mut basis = self.one();
        let theta = self.generator();
        for j in 0..d {
            let col = self.mul(&a, &basis);
            for i in 0..d {
                m[i][j] = col.coords[i].clone();
            }
            basis = self.mul(&basis, &theta);
        }
        m[0][d] = Rational::one();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero()).ok_or(PolyError::DivisionByZero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=d {
                        let v = &m[col][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
        }
        Ok(FieldElem { coords: m.into_iter().map(|row| row[d].clone()).collect() })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, PolyError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn display<'a>(&'a self, a: &'a FieldElem) -> DisplayElem<'a> {
        DisplayElem { field: self, elem: a }
    }
}

pub struct DisplayElem<'a> {
    field: &'a CoefficientField,
    elem: &'a FieldElem,
}

impl fmt::Display for DisplayElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.field {
            CoefficientField::Rational => "",
            CoefficientField::Binomial(e) => e.generator.as_str(),
        };
        let mut first = true;
        for (k, c) in self.elem.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c.is_integer() {
                alloc::format!("{}", c.numer())
            } else {
                alloc::format!("{}/{}", c.numer(), c.denom())
            };
            match k {
                0 => write!(f, "{}", cs)?,
                1 if c.is_one() => write!(f, "{}", name)?,
                1 => write!(f, "({})*{}", cs, name)?,
                _ if c.is_one() => write!(f, "{}^{}", name, k)?,
                _ => write!(f, "({})*{}^{}", cs, name, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => write!(f, "Q"),
            CoefficientField::Binomial(e) => {
                write!(f, "Q({}), {}^{} = {}", e.generator, e.generator, e.degree, e.constant)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn arithmetic_in_extension() {
        // κ^3 = -3/5
        let k = CoefficientField::binomial("k", 3, rat(-3, 5));
        let g = k.generator();
        assert_eq!(k.pow(&g, 3), k.from_rational(rat(-3, 5)));
        let x = k.add(&g, &k.from_rational(rat(2, 1)));
        let inv = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &inv), k.one());
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn capelli_irreducibility() {
        let f = |d, c| BinomialExtension { generator: "t".into(), degree: d, constant: c };
        assert!(f(2, rat(-3, 5)).is_field());
        assert!(!f(2, rat(4, 1)).is_field());
        assert!(!f(4, rat(-4, 1)).is_field());
        assert!(f(5, rat(-2, 7)).is_field());
        assert!(!f(6, rat(8, 1)).is_field());
    }
}
