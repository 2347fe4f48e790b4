//! Characteristic polynomials of finite-order monodromies, kept as
//! quotients of binomials `λ^k ∓ 1`.
//!
//! Arithmetic goes through the cyclotomic decomposition: `λ^k - 1` is the
//! product of `Φ_d` over `d | k`, and `λ^k + 1` the product over `d | 2k`
//! with `d ∤ k`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::poly::UniPoly;

/// `λ^k - 1` (`Minus`) or `λ^k + 1` (`Plus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub k: u64,
    pub plus: bool,
}

impl Binomial {
    pub fn minus(k: u64) -> Self {
        Binomial { k, plus: false }
    }

    pub fn plus(k: u64) -> Self {
        Binomial { k, plus: true }
    }

    /// The eigenvalue sum of cyclic (anti-)permutation of order `k`.
    pub fn trace(&self) -> i64 {
        match (self.k, self.plus) {
            (1, false) => 1,
            (1, true) => -1,
            _ => 0,
        }
    }

    fn cyclotomic(&self, out: &mut BTreeMap<u64, i64>, sign: i64) {
        let k = self.k;
        if self.plus {
            for d in divisors(2 * k).into_iter().filter(|d| k % d != 0) {
                *out.entry(d).or_insert(0) += sign;
            }
        } else {
            for d in divisors(k) {
                *out.entry(d).or_insert(0) += sign;
            }
        }
    }

    /// Image under `λ ↦ -λ`, made monic.
    pub fn suspended(&self) -> Self {
        if self.k % 2 == 0 {
            *self
        } else {
            Binomial { k: self.k, plus: !self.plus }
        }
    }

    pub fn expand(&self) -> UniPoly {
        UniPoly::binomial(self.k as u32, if self.plus { 1 } else { -1 })
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.plus { '+' } else { '-' };
        if self.k == 1 {
            write!(f, "λ {} 1", s)
        } else {
            write!(f, "λ^{} {} 1", self.k, s)
        }
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Exponents of cyclotomic polynomials `Φ_d`; negative entries are
/// denominator factors.
pub type Cyclotomic = BTreeMap<u64, i64>;

/// Euler's totient, the degree of `Φ_d`.
pub fn totient(d: u64) -> u64 {
    divisors(d).into_iter().map(|k| mobius(d / k) * k as i64).sum::<i64>() as u64
}

/// Factor form `∏ num / ∏ den`. Equality is equality of the rational
/// functions, not of the factor lists.
#[derive(Clone, Debug, Default, Eq)]
pub struct CharPoly {
    pub num: Vec<Binomial>,
    pub den: Vec<Binomial>,
}

impl PartialEq for CharPoly {
    fn eq(&self, other: &Self) -> bool {
        self.cyclotomic() == other.cyclotomic()
    }
}

impl CharPoly {
    pub fn one() -> Self {
        CharPoly::default()
    }

    pub fn new(num: Vec<Binomial>, den: Vec<Binomial>) -> Self {
        CharPoly { num, den }
    }

    pub fn binomial(b: Binomial) -> Self {
        CharPoly { num: alloc::vec![b], den: Vec::new() }
    }

    pub fn degree(&self) -> i64 {
        self.num.iter().map(|b| b.k as i64).sum::<i64>() - self.den.iter().map(|b| b.k as i64).sum::<i64>()
    }

    /// Sum of the eigenvalues, with denominator eigenvalues subtracted.
    pub fn trace(&self) -> i64 {
        self.num.iter().map(Binomial::trace).sum::<i64>() - self.den.iter().map(Binomial::trace).sum::<i64>()
    }

    pub fn cyclotomic(&self) -> Cyclotomic {
        let mut out = BTreeMap::new();
        for b in &self.num {
            b.cyclotomic(&mut out, 1);
        }
        for b in &self.den {
            b.cyclotomic(&mut out, -1);
        }
        out.retain(|_, e| *e != 0);
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.cyclotomic().values().all(|&e| e > 0)
    }

    /// Cyclotomic orders whose exponent is negative.
    pub fn obstructions(&self) -> Vec<u64> {
        self.cyclotomic().into_iter().filter(|(_, e)| *e < 0).map(|(d, _)| d).collect()
    }

    /// Integer coefficients, lowest degree first; `None` when the quotient
    /// is not a polynomial.
    pub fn expand(&self) -> Option<UniPoly> {
        let mut p = UniPoly::one();
        for b in &self.num {
            p = &p * &b.expand();
        }
        for b in &self.den {
            p = p.exact_divide(&b.expand()).ok()?;
        }
        Some(p)
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        CharPoly::from_cyclotomic(&add_maps(&self.cyclotomic(), &other.cyclotomic(), 1))
    }

    pub fn div(&self, other: &CharPoly) -> CharPoly {
        CharPoly::from_cyclotomic(&add_maps(&self.cyclotomic(), &other.cyclotomic(), -1))
    }

    /// `self` divides `other` as polynomials; both must be polynomial.
    pub fn divides(&self, other: &CharPoly) -> bool {
        other.div(self).is_polynomial()
    }

    pub fn gcd(&self, other: &CharPoly) -> CharPoly {
        let a = self.cyclotomic();
        let b = other.cyclotomic();
        let g: Cyclotomic =
            a.iter().filter_map(|(d, e)| b.get(d).map(|f| (*d, (*e).min(*f)))).filter(|(_, e)| *e > 0).collect();
        CharPoly::from_cyclotomic(&g)
    }

    /// Monodromy of the suspension `f + w^2`: `λ ↦ -λ`, factor by factor.
    pub fn suspend(&self) -> CharPoly {
        CharPoly {
            num: self.num.iter().map(Binomial::suspended).collect(),
            den: self.den.iter().map(Binomial::suspended).collect(),
        }
    }

    /// Shortest-looking factor form of a cyclotomic product: Möbius
    /// inversion into `λ^k - 1` factors, then pairs
    /// `(λ^2k - 1)/(λ^k - 1)` folded into `λ^k + 1`.
    pub fn from_cyclotomic(c: &Cyclotomic) -> CharPoly {
        let mut minus: BTreeMap<u64, i64> = BTreeMap::new();
        for (&d, &e) in c {
            for k in divisors(d) {
                let m = mobius(d / k);
                if m != 0 {
                    *minus.entry(k).or_insert(0) += m * e;
                }
            }
        }
        let mut plus: BTreeMap<u64, i64> = BTreeMap::new();
        let keys: Vec<u64> = minus.keys().rev().copied().collect();
        for k in keys {
            loop {
                let top = minus.get(&(2 * k)).copied().unwrap_or(0);
                let low = minus.get(&k).copied().unwrap_or(0);
                let s = if top > 0 && low < 0 {
                    1
                } else if top < 0 && low > 0 {
                    -1
                } else {
                    break;
                };
                *minus.entry(2 * k).or_insert(0) -= s;
                *minus.entry(k).or_insert(0) += s;
                *plus.entry(k).or_insert(0) += s;
            }
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        let push = |k: u64, e: i64, plus: bool, num: &mut Vec<Binomial>, den: &mut Vec<Binomial>| {
            let b = Binomial { k, plus };
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    num.push(b);
                } else {
                    den.push(b);
                }
            }
        };
        let mut all: Vec<(u64, i64, bool)> = minus.into_iter().map(|(k, e)| (k, e, false)).collect();
        all.extend(plus.into_iter().map(|(k, e)| (k, e, true)));
        all.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        for (k, e, p) in all {
            push(k, e, p, &mut num, &mut den);
        }
        CharPoly { num, den }
    }

    /// Every polynomial divisor of degree `deg`, as cyclotomic sub-multisets.
    pub fn divisors_of_degree(&self, deg: u64) -> Vec<CharPoly> {
        let c: Vec<(u64, i64)> = self.cyclotomic().into_iter().filter(|(_, e)| *e > 0).collect();
        let mut out = Vec::new();
        let mut pick = BTreeMap::new();
        sub_multisets(&c, 0, deg, &mut pick, &mut out);
        out
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{}", self)
    }
}

fn add_maps(a: &Cyclotomic, b: &Cyclotomic, s: i64) -> Cyclotomic {
    let mut out = a.clone();
    for (d, e) in b {
        *out.entry(*d).or_insert(0) += s * e;
    }
    out.retain(|_, e| *e != 0);
    out
}

fn sub_multisets(c: &[(u64, i64)], i: usize, left: u64, pick: &mut Cyclotomic, out: &mut Vec<CharPoly>) {
    if left == 0 {
        out.push(CharPoly::from_cyclotomic(pick));
        return;
    }
    if i == c.len() {
        return;
    }
    let (d, e) = c[i];
    let phi = totient(d);
    for k in 0..=e {
        let used = phi * k as u64;
        if used > left {
            break;
        }
        if k > 0 {
            pick.insert(d, k);
        }
        sub_multisets(c, i + 1, left - used, pick, out);
    }
    pick.remove(&d);
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn product(f: &mut fmt::Formatter<'_>, bs: &[Binomial], bare_single: bool) -> fmt::Result {
            if bs.len() == 1 && bare_single {
                return write!(f, "{}", bs[0]);
            }
            for b in bs {
                write!(f, "({})", b)?;
            }
            Ok(())
        }
        if self.num.is_empty() && self.den.is_empty() {
            return write!(f, "1");
        }
        if self.num.is_empty() {
            write!(f, "1")?;
        } else {
            product(f, &self.num, self.den.is_empty())?;
        }
        if !self.den.is_empty() {
            write!(f, "/")?;
            if self.den.len() == 1 {
                write!(f, "({})", self.den[0])?;
            } else {
                write!(f, "[")?;
                product(f, &self.den, false)?;
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

/// Coefficients as machine integers, for display and tests.
pub fn coefficients_i64(p: &UniPoly) -> Option<Vec<i64>> {
    p.coeffs().iter().map(|c| c.to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn m(k: u64) -> Binomial {
        Binomial::minus(k)
    }
    fn p(k: u64) -> Binomial {
        Binomial::plus(k)
    }

    #[test]
    fn expands_quotient() {
        // (λ^8 - 1)(λ + 1)/(λ^4 - 1) = (λ^4 + 1)(λ + 1)
        let c = CharPoly::new(vec![m(8), p(1)], vec![m(4)]);
        assert_eq!(coefficients_i64(&c.expand().unwrap()).unwrap(), vec![1, 1, 0, 0, 1, 1]);
        assert_eq!(c, CharPoly::new(vec![p(4), p(1)], vec![]));
        assert_eq!(format!("{}", CharPoly::from_cyclotomic(&c.cyclotomic())), "(λ^4 + 1)(λ + 1)");
    }

    #[test]
    fn non_polynomial_flagged() {
        let c = CharPoly::new(vec![p(12)], vec![p(1)]);
        assert!(c.expand().is_none());
        assert!(!c.is_polynomial());
        assert_eq!(c.obstructions(), vec![2]);
    }

    #[test]
    fn empty_product() {
        assert_eq!(coefficients_i64(&CharPoly::one().expand().unwrap()).unwrap(), vec![1]);
        assert_eq!(format!("{}", CharPoly::one()), "1");
    }

    #[test]
    fn canonical_forms() {
        let c = CharPoly::new(vec![p(12)], vec![p(4)]);
        assert_eq!(format!("{}", CharPoly::from_cyclotomic(&c.cyclotomic())), "(λ^12 + 1)/(λ^4 + 1)");
        let c = CharPoly::new(vec![p(12)], vec![p(4), p(1)]);
        assert_eq!(format!("{}", CharPoly::from_cyclotomic(&c.cyclotomic())), "(λ^12 + 1)/[(λ^4 + 1)(λ + 1)]");
        let c = CharPoly::new(vec![p(3)], vec![p(1)]);
        assert_eq!(format!("{}", CharPoly::from_cyclotomic(&c.cyclotomic())), "(λ^3 + 1)/(λ + 1)");
    }

    #[test]
    fn suspension_examples() {
        assert_eq!(CharPoly::binomial(p(3)).suspend().num, vec![m(3)]);
        assert_eq!(CharPoly::binomial(m(1)).suspend().num, vec![p(1)]);
        assert_eq!(CharPoly::binomial(p(4)).suspend().num, vec![p(4)]);
    }

    #[test]
    fn traces() {
        assert_eq!(CharPoly::binomial(p(12)).trace(), 0);
        assert_eq!(CharPoly::new(vec![m(3)], vec![m(1)]).trace(), -1);
        assert_eq!(CharPoly::new(vec![p(3)], vec![p(1)]).trace(), 1);
        let e = CharPoly::new(vec![p(3)], vec![p(1)]).expand().unwrap();
        assert_eq!(e.trace().unwrap(), 1.into());
    }

    #[test]
    fn divisors_by_degree() {
        // (λ + 1)(λ^4 + 1): degree-1, 4 and 5 divisors
        let s = CharPoly::new(vec![p(4), p(1)], vec![]);
        assert_eq!(s.divisors_of_degree(1), vec![CharPoly::binomial(p(1))]);
        assert_eq!(s.divisors_of_degree(4), vec![CharPoly::binomial(p(4))]);
        assert_eq!(s.divisors_of_degree(5).len(), 1);
        assert!(s.divisors_of_degree(2).is_empty());
    }

    #[test]
    fn gcd_of_coprime_slices() {
        let a = CharPoly::new(vec![m(4)], vec![p(1)]);
        let b = CharPoly::new(vec![p(3)], vec![p(1)]);
        assert_eq!(a.gcd(&b), CharPoly::one());
        assert!(CharPoly::binomial(m(1)).divides(&a));
    }

    #[test]
    fn totients() {
        assert_eq!([1, 2, 3, 4, 8, 12, 24].map(totient), [1, 1, 2, 2, 4, 4, 8]);
    }
}
