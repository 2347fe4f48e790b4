//! Roots of edge polynomials: rational roots, one binomial extension (a
//! quadratic factor is brought to binomial form by completing the square),
//! or roots already present in the working field.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PuiseuxError;
use crate::poly::{CoefficientField, FieldElem, Rational};

#[derive(Debug, Clone)]
pub(crate) struct EdgeRoot {
    pub field: CoefficientField,
    pub value: FieldElem,
    pub multiplicity: u32,
    pub conjugates: u32,
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, PuiseuxError> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_LIMIT).ok_or_else(|| {
        PuiseuxError::UnsupportedShape(format!("edge coefficient {} too large for rational root search", n))
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn eval_q(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

/// Divides by `(W - r)`; the caller guarantees `r` is a root.
fn deflate_q(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut out = alloc::vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

/// Rational roots with multiplicities, and the cofactor.
pub(crate) fn rational_roots(c: &[Rational]) -> Result<(Vec<(Rational, u32)>, Vec<Rational>), PuiseuxError> {
    let mut den = BigInt::one();
    for a in c {
        den = den.lcm(a.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|a| (a * Rational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let konst = ints.iter().find(|a| !a.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let mut rest = c.to_vec();
    let mut found = Vec::new();
    if rest.len() <= 1 {
        return Ok((found, rest));
    }
    let nums = divisors(&konst)?;
    let dens = divisors(&lead)?;
    let mut seen: Vec<Rational> = Vec::new();
    for d in &dens {
        for n in &nums {
            for sign in [1, -1] {
                let r = Rational::new(n * sign, d.clone());
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                let mut m = 0;
                while rest.len() > 1 && eval_q(&rest, &r).is_zero() {
                    rest = deflate_q(&rest, &r);
                    m += 1;
                }
                if m > 0 {
                    found.push((r, m));
                }
            }
        }
    }
    Ok((found, rest))
}

/// Nonzero roots of `sum c[k] W^k` in `field` or in a single binomial
/// extension of Q.
pub(crate) fn edge_roots(field: &CoefficientField, c: &[FieldElem]) -> Result<Vec<EdgeRoot>, PuiseuxError> {
    let deg = c.len() - 1;
    let rational: Option<Vec<Rational>> = c.iter().map(FieldElem::as_rational).collect();
    if let Some(q) = rational {
        let (found, rest) = rational_roots(&q)?;
        let mut out: Vec<EdgeRoot> = found
            .into_iter()
            .map(|(r, m)| EdgeRoot { field: field.clone(), value: field.from_rational(r), multiplicity: m, conjugates: 1 })
            .collect();
        if rest.len() <= 1 {
            return Ok(out);
        }
        let e = rest.len() - 1;
        let binomial = rest[1..e].iter().all(Zero::is_zero);
        if e == 2 && !binomial && *field == CoefficientField::Rational {
            // no rational roots left, so the discriminant is not a square
            let (a, b) = (&rest[2], &rest[1]);
            let disc = b * b - Rational::from_integer(4.into()) * a * &rest[0];
            let ext = CoefficientField::binomial("k", 2, disc);
            let half = (Rational::from_integer(2.into()) * a).recip();
            let value = ext.add(&ext.from_rational(-b * &half), &ext.scale(&ext.generator(), &half));
            out.push(EdgeRoot { value, field: ext, multiplicity: 1, conjugates: 2 });
            return Ok(out);
        }
        if !binomial || *field != CoefficientField::Rational {
            return Err(PuiseuxError::UnsupportedShape(format!(
                "edge polynomial factor of degree {} is not a binomial over Q",
                e
            )));
        }
        let constant = -&rest[0] / &rest[e];
        let ext = CoefficientField::binomial("k", e as u32, constant);
        if let CoefficientField::Binomial(b) = &ext {
            if !b.is_field() {
                return Err(PuiseuxError::UnsupportedShape(format!("reducible binomial extension {}", ext)));
            }
        }
        out.push(EdgeRoot { value: ext.generator(), field: ext, multiplicity: 1, conjugates: e as u32 });
        return Ok(out);
    }
    // coefficients outside Q: accept a single root of full multiplicity
    let lead = &c[deg];
    let r = field.neg(&field.div(&c[deg - 1], &field.scale(lead, &Rational::from_integer(deg.into())))?);
    let mut check = alloc::vec![field.zero(); deg + 1];
    // lead * (W - r)^deg
    let neg_r = field.neg(&r);
    let mut binom = Rational::one();
    for k in 0..=deg {
        check[k] = field.mul(lead, &field.scale(&field.pow(&neg_r, (deg - k) as u32), &binom));
        binom = binom * Rational::from_integer((deg - k).into()) / Rational::from_integer((k + 1).into());
    }
    if check.iter().zip(c).all(|(a, b)| field.sub(a, b).is_zero()) {
        return Ok(alloc::vec![EdgeRoot { field: field.clone(), value: r, multiplicity: deg as u32, conjugates: 1 }]);
    }
    Err(PuiseuxError::UnsupportedShape(format!("edge polynomial without roots in {}", field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn q(c: &[i64]) -> Vec<FieldElem> {
        c.iter().map(|&a| FieldElem::rational(int(a))).collect()
    }

    #[test]
    fn node_has_two_rational_roots() {
        // W^2 - 1
        let r = edge_roots(&CoefficientField::Rational, &q(&[-1, 0, 1])).unwrap();
        let vals: Vec<_> = r.iter().map(|e| e.value.as_rational().unwrap()).collect();
        assert!(vals.contains(&int(1)) && vals.contains(&int(-1)));
    }

    #[test]
    fn binomial_factor_extends() {
        // 7 W^5 + 2 is irreducible over Q
        let r = edge_roots(&CoefficientField::Rational, &q(&[2, 0, 0, 0, 0, 7])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].conjugates, 5);
        assert_eq!(r[0].field, CoefficientField::binomial("k", 5, rat(-2, 7)));
    }

    #[test]
    fn repeated_root() {
        let r = edge_roots(&CoefficientField::Rational, &q(&[1, -2, 1])).unwrap();
        assert_eq!(r[0].multiplicity, 2);
    }

    #[test]
    fn quadratic_completes_the_square() {
        // W^2 + 4W - 3 has roots -2 ± √7
        let r = edge_roots(&CoefficientField::Rational, &q(&[-3, 4, 1])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].conjugates, 2);
        let f = &r[0].field;
        assert_eq!(*f, CoefficientField::binomial("k", 2, int(28)));
        let w = &r[0].value;
        let val = f.add(&f.add(&f.mul(w, w), &f.scale(w, &int(4))), &f.from_rational(int(-3)));
        assert!(val.is_zero());
    }

    #[test]
    fn general_cubic_unsupported() {
        assert!(edge_roots(&CoefficientField::Rational, &q(&[1, 1, 0, 1])).is_err());
    }
}
