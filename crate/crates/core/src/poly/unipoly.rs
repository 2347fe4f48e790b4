use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::PolyError;

/// Dense polynomial in one variable over the integers, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `λ^k + sign`, with `sign` either 1 or -1.
    pub fn binomial(k: u32, sign: i64) -> Self {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[0] += BigInt::from(sign);
        c[k as usize] += BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Trace of a companion matrix: minus the subleading coefficient of the
    /// monic polynomial.
    pub fn trace(&self) -> Option<BigInt> {
        if self.coeffs.is_empty() || !self.leading().is_one() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(BigInt::zero());
        }
        Some(-self.coeffs[self.coeffs.len() - 2].clone())
    }

    /// `p = q * r` with integer `r`, else `NotDivisible`.
    pub fn exact_divide(&self, q: &UniPoly) -> Result<UniPoly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        if self.degree() < q.degree() {
            return Err(PolyError::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let dq = q.degree();
        let lq = q.leading();
        let mut quot = vec![BigInt::zero(); self.degree() - dq + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dq].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lq);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[i + j] -= &c * qc;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(UniPoly::new(quot))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        UniPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let mut r: Vec<Rational> = self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let dd = d.degree();
        let ld = Rational::from_integer(d.leading());
        while r.len() > dd && !r.is_empty() {
            let top = r.last().cloned().unwrap_or_else(Rational::zero);
            let shift = r.len() - 1 - dd;
            if !top.is_zero() {
                let c = &top / &ld;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[shift + j] -= &c * Rational::from_integer(dc.clone());
                }
            }
            r.pop();
        }
        let mut den = BigInt::one();
        for c in &r {
            den = den.lcm(c.denom());
        }
        let den = Rational::from_integer(den);
        UniPoly::new(r.iter().map(|c| (c * &den).to_integer()).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, a) in rhs.coeffs.iter().enumerate() {
            c[i] += a;
        }
        UniPoly::new(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 || !abs.is_one() {
                write!(f, "{}", abs)?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "L")?,
                _ => write!(f, "L^{}", k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_divide_examples() {
        let l8m1 = UniPoly::binomial(8, -1);
        let l4m1 = UniPoly::binomial(4, -1);
        assert_eq!(l8m1.exact_divide(&l4m1).unwrap(), UniPoly::binomial(4, 1));
        // λ^12 + 1 = (λ^4 + 1)(λ^8 - λ^4 + 1)
        let q = UniPoly::binomial(12, 1).exact_divide(&UniPoly::binomial(4, 1)).unwrap();
        assert_eq!(q, UniPoly::from_i64(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
        assert_eq!(
            UniPoly::binomial(12, 1).exact_divide(&UniPoly::binomial(1, 1)),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(UniPoly::one().exact_divide(&UniPoly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_of_cusp_slices() {
        // (λ^4 - 1)/(λ + 1) and (λ^3 + 1)/(λ + 1) are coprime
        let a = UniPoly::binomial(4, -1).exact_divide(&UniPoly::binomial(1, 1)).unwrap();
        let b = UniPoly::binomial(3, 1).exact_divide(&UniPoly::binomial(1, 1)).unwrap();
        assert_eq!(a.gcd(&b), UniPoly::one());
        let c = &a * &UniPoly::binomial(1, -1);
        assert_eq!(c.gcd(&a), a);
    }

    #[test]
    fn trace_and_display() {
        let p = UniPoly::from_i64(&[1, -1, 1]);
        assert_eq!(p.trace(), Some(BigInt::from(1)));
        assert_eq!(alloc::format!("{}", p), "L^2 - L + 1");
    }
}
